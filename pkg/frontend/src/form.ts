/**
 * Exchange form state: a rule selector plus color toggles for Rule 1.
 *
 * The joker count is never typed by the facilitator; it is always
 * 3 - (selected colors), mirroring how a Rule 1 trade actually works.
 * Composition is purely structural; whether the exchange is *legal* is the
 * service's call.
 */

import type { ColorName, ExchangeDoc } from './types.js';
import { COLOR_NAMES } from './types.js';

export interface FormState {
  rule: 1 | 2;
  colors: ColorName[];
}

export function emptyForm(): FormState {
  return { rule: 1, colors: [] };
}

export function selectRule(state: FormState, rule: 1 | 2): FormState {
  return { rule, colors: rule === 2 ? [] : state.colors };
}

export function toggleColor(state: FormState, color: ColorName): FormState {
  if (state.rule !== 1) {
    return state;
  }
  const colors = state.colors.includes(color)
    ? state.colors.filter((c) => c !== color)
    : [...state.colors, color].sort();
  return { rule: 1, colors };
}

export function jokersRequired(state: FormState): number {
  return state.rule === 1 ? 3 - state.colors.length : 0;
}

export function isWellFormed(state: FormState): boolean {
  if (state.rule === 2) {
    return state.colors.length === 0;
  }
  return (
    state.colors.length <= 3 &&
    new Set(state.colors).size === state.colors.length &&
    state.colors.every((c) => COLOR_NAMES.includes(c))
  );
}

export function composedExchange(state: FormState): ExchangeDoc | null {
  if (!isWellFormed(state)) {
    return null;
  }
  if (state.rule === 2) {
    return { rule: 2 };
  }
  return { rule: 1, colors: [...state.colors], jokers: jokersRequired(state) };
}

/** Prefill the form from a suggested exchange (the suggestion chip). */
export function formFromExchange(exchange: ExchangeDoc): FormState {
  if (exchange.rule === 2) {
    return { rule: 2, colors: [] };
  }
  return { rule: 1, colors: [...exchange.colors].sort() };
}
