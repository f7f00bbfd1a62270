/**
 * DOM wiring for the facilitator console.  All game knowledge lives on the
 * service side; this file only renders documents and posts forms.
 */

import { SessionApi } from './api.js';
import { FacilitatorController } from './controller.js';
import {
  composedExchange,
  isWellFormed,
  jokersRequired,
  selectRule,
  toggleColor,
} from './form.js';
import { Poller } from './poller.js';
import { isValidDistribution, presetDistribution, PresetId } from './presets.js';
import { COLOR_NAMES, ColorName, describeExchange, PieceSetDoc } from './types.js';
import { deriveView, solvabilityBadge } from './view.js';

const COLOR_SWATCHES: Record<ColorName, string> = {
  C1: '#4a7dd4',
  C2: '#d45454',
  C3: '#4aa66a',
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text = '',
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text) {
    node.textContent = text;
  }
  return node;
}

function readNumber(input: HTMLInputElement, fallback = 0): number {
  const value = parseInt(input.value, 10);
  return Number.isNaN(value) ? fallback : value;
}

export function mountApp(root: HTMLElement): void {
  const params = new URLSearchParams(window.location.search);
  const api = new SessionApi(params.get('service') ?? 'http://127.0.0.1:8000');
  const controller = new FacilitatorController(api);
  const poller = new Poller(() => controller.refresh(), 1000);

  // ---- setup screen -------------------------------------------------
  const setup = el('div', { class: 'panel setup' });
  const playersInput = el('input', { type: 'number', value: '4', min: '1' });
  const presetSelect = el('select');
  for (const [value, label] of [
    ['worst', 'least favorable (sufficient set + one color)'],
    ['best', 'most favorable (all full sets)'],
    ['custom', 'custom'],
  ]) {
    presetSelect.appendChild(el('option', { value }, label));
  }
  const chipInputs = COLOR_NAMES.map((name) => {
    const input = el('input', { type: 'number', value: '0', min: '0' });
    input.style.borderColor = COLOR_SWATCHES[name];
    return input;
  });
  const jokersInput = el('input', { type: 'number', value: '0', min: '0' });
  const dominoesInput = el('input', { type: 'number', value: '0', min: '0' });
  const minutesInput = el('input', { type: 'number', value: '15', min: '0' });
  const createButton = el('button', {}, 'start session');
  const setupError = el('div', { class: 'error' });

  function customDistribution(): PieceSetDoc {
    return {
      chips: chipInputs.map((i) => readNumber(i)),
      jokers: readNumber(jokersInput),
      dominoes: readNumber(dominoesInput),
    };
  }

  function applyPreset(): void {
    const preset = presetSelect.value as PresetId;
    const dist = presetDistribution(preset, readNumber(playersInput, 4), customDistribution());
    const editable = preset === 'custom';
    for (const input of [...chipInputs, jokersInput, dominoesInput]) {
      input.disabled = !editable;
    }
    if (dist && !editable) {
      chipInputs.forEach((input, i) => (input.value = String(dist.chips[i])));
      jokersInput.value = String(dist.jokers);
      dominoesInput.value = String(dist.dominoes);
    }
    setupError.textContent =
      preset !== 'custom' && !dist ? 'no such preset for this player count' : '';
  }

  presetSelect.addEventListener('change', applyPreset);
  playersInput.addEventListener('input', applyPreset);

  createButton.addEventListener('click', () => {
    const players = readNumber(playersInput, 0);
    const dist = customDistribution();
    if (players < 1 || !isValidDistribution(dist)) {
      setupError.textContent = 'players and counts must be nonnegative integers';
      return;
    }
    const minutes = readNumber(minutesInput, 0);
    const deadline =
      minutes > 0 ? new Date(Date.now() + minutes * 60_000).toISOString() : undefined;
    controller
      .createSession(players, dist, deadline)
      .then(() => poller.start())
      .catch((err) => {
        setupError.textContent = err instanceof Error ? err.message : String(err);
      });
  });

  setup.append(
    el('h2', {}, 'set up a game'),
    labeled('players', playersInput),
    labeled('preset', presetSelect),
    labeled('chips', wrap(...chipInputs)),
    labeled('jokers', jokersInput),
    labeled('dominoes', dominoesInput),
    labeled('minutes on the clock', minutesInput),
    createButton,
    setupError,
  );

  // ---- record panel --------------------------------------------------
  const panel = el('div', { class: 'panel record', hidden: '' });
  const badge = el('div', { class: 'badge' });
  const countdown = el('div', { class: 'countdown' });
  const stateLine = el('div', { class: 'state' });
  const progressOuter = el('div', { class: 'progress' });
  const progressInner = el('div', { class: 'progress-fill' });
  progressOuter.appendChild(progressInner);

  const ruleRadios: HTMLInputElement[] = [];
  const ruleRow = el('div', { class: 'rule-row' });
  for (const rule of [1, 2] as const) {
    const radio = el('input', { type: 'radio', name: 'rule' });
    radio.checked = rule === 1;
    radio.addEventListener('change', () => {
      controller.setForm(selectRule(controller.snapshot.form, rule));
    });
    ruleRadios.push(radio);
    const label = el('label', {}, ` rule ${rule} `);
    label.prepend(radio);
    ruleRow.appendChild(label);
  }

  const colorButtons = new Map<ColorName, HTMLButtonElement>();
  const colorRow = el('div', { class: 'color-row' });
  for (const name of COLOR_NAMES) {
    const button = el('button', { class: 'color-toggle' }, name);
    button.style.background = COLOR_SWATCHES[name];
    button.addEventListener('click', () => {
      controller.setForm(toggleColor(controller.snapshot.form, name));
    });
    colorButtons.set(name, button);
    colorRow.appendChild(button);
  }
  const jokerNote = el('span', { class: 'joker-note' });
  colorRow.appendChild(jokerNote);

  const submitButton = el('button', {}, 'record exchange');
  submitButton.addEventListener('click', () => void controller.submitExchange());
  const undoButton = el('button', {}, 'undo');
  undoButton.addEventListener('click', () => void controller.undo());
  const suggestionChip = el('button', { class: 'suggestion' });
  suggestionChip.addEventListener('click', () => controller.prefillFromSuggestion());
  const applySuggestion = el('button', {}, 'play suggestion');
  applySuggestion.addEventListener('click', () => void controller.submitSuggested());
  const panelError = el('div', { class: 'error' });
  const historyLine = el('div', { class: 'history' });

  panel.append(
    el('h2', {}, 'live game'),
    badge,
    countdown,
    stateLine,
    progressOuter,
    ruleRow,
    colorRow,
    wrap(submitButton, undoButton),
    wrap(suggestionChip, applySuggestion),
    panelError,
    historyLine,
  );

  // ---- survived overlay ----------------------------------------------
  const overlay = el('div', { class: 'overlay', hidden: '' });
  overlay.append(el('div', { class: 'overlay-text' }, 'every player holds a domino: survived'));

  controller.onChange((state) => {
    if (!state.session) {
      return;
    }
    setup.hidden = true;
    panel.hidden = false;
    const view = deriveView(state.session, Date.now());
    badge.textContent = solvabilityBadge(view);
    badge.className = `badge ${view.solvable ? 'ok' : 'bad'}`;
    stateLine.textContent =
      `chips ${view.chips.join('/')}, jokers ${view.jokers}, ` +
      `dominoes ${view.dominoes} of ${view.players} (${view.status})`;
    progressInner.style.width = `${Math.round(view.progress * 100)}%`;
    historyLine.textContent = `${view.historyLength} exchanges recorded`;
    const form = state.form;
    ruleRadios[0].checked = form.rule === 1;
    ruleRadios[1].checked = form.rule === 2;
    for (const [name, button] of colorButtons) {
      button.classList.toggle('selected', form.colors.includes(name));
      button.disabled = form.rule === 2;
    }
    jokerNote.textContent =
      form.rule === 1 ? `+ ${jokersRequired(form)} joker(s) auto-filled` : '';
    submitButton.disabled =
      !isWellFormed(form) || composedExchange(form) === null || view.status !== 'running';
    const suggested = state.suggestion?.exchange ?? null;
    suggestionChip.hidden = suggested === null;
    applySuggestion.hidden = suggested === null;
    suggestionChip.textContent = suggested
      ? `suggested: ${describeExchange(suggested)}` +
        (state.suggestion?.remainingPlanCost != null
          ? ` (${state.suggestion.remainingPlanCost} to go)`
          : '')
      : '';
    panelError.textContent = state.error ?? '';
    overlay.hidden = view.status !== 'survived';
  });

  // countdown repaint between polls
  setInterval(() => {
    const session = controller.snapshot.session;
    if (!session) {
      return;
    }
    const view = deriveView(session, Date.now());
    countdown.textContent = view.countdownLabel ? `time left ${view.countdownLabel}` : '';
    countdown.classList.toggle('overdue', view.overdue);
  }, 250);

  root.append(setup, panel, overlay);
  applyPreset();

  function labeled(text: string, node: HTMLElement): HTMLElement {
    const row = el('div', { class: 'row' });
    row.append(el('label', {}, text), node);
    return row;
  }

  function wrap(...nodes: HTMLElement[]): HTMLElement {
    const row = el('div', { class: 'row' });
    row.append(...nodes);
    return row;
  }
}
