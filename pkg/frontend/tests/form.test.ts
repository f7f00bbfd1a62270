import { describe, expect, it } from 'vitest';

import {
  composedExchange,
  emptyForm,
  formFromExchange,
  isWellFormed,
  jokersRequired,
  selectRule,
  toggleColor,
} from '../src/form.js';

describe('exchange form', () => {
  it('autofills jokers to three minus the selected colors', () => {
    let state = emptyForm();
    expect(jokersRequired(state)).toBe(3);
    state = toggleColor(state, 'C1');
    expect(jokersRequired(state)).toBe(2);
    state = toggleColor(state, 'C3');
    expect(jokersRequired(state)).toBe(1);
    state = toggleColor(state, 'C2');
    expect(jokersRequired(state)).toBe(0);
  });

  it('toggling twice deselects', () => {
    let state = toggleColor(emptyForm(), 'C2');
    state = toggleColor(state, 'C2');
    expect(state.colors).toEqual([]);
  });

  it('composes rule 1 documents with sorted colors', () => {
    let state = toggleColor(emptyForm(), 'C3');
    state = toggleColor(state, 'C1');
    expect(composedExchange(state)).toEqual({ rule: 1, colors: ['C1', 'C3'], jokers: 1 });
  });

  it('composes a pure-joker rule 1 when nothing is selected', () => {
    expect(composedExchange(emptyForm())).toEqual({ rule: 1, colors: [], jokers: 3 });
  });

  it('rule 2 clears color selections and composes bare', () => {
    let state = toggleColor(emptyForm(), 'C1');
    state = selectRule(state, 2);
    expect(state.colors).toEqual([]);
    expect(composedExchange(state)).toEqual({ rule: 2 });
    expect(toggleColor(state, 'C2')).toEqual(state);
  });

  it('well-formedness guards duplicates', () => {
    expect(isWellFormed({ rule: 1, colors: ['C1', 'C1'] })).toBe(false);
    expect(composedExchange({ rule: 1, colors: ['C1', 'C1'] })).toBeNull();
  });

  it('prefills from a suggested exchange', () => {
    expect(formFromExchange({ rule: 1, colors: ['C2', 'C1'], jokers: 1 })).toEqual({
      rule: 1,
      colors: ['C1', 'C2'],
    });
    expect(formFromExchange({ rule: 2 })).toEqual({ rule: 2, colors: [] });
  });
});
