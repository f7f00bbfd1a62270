import { describe, expect, it } from 'vitest';

import type { SessionDoc } from '../src/types.js';
import { deriveView, formatCountdown, solvabilityBadge } from '../src/view.js';

function sessionDoc(overrides: Partial<SessionDoc> = {}): SessionDoc {
  return {
    id: 'abc',
    config: { players: 4, initial: { chips: [4, 3, 1], jokers: 0, dominoes: 0 } },
    current: { chips: [3, 2, 0], jokers: 1, dominoes: 1 },
    history: [{ exchange: { rule: 1, colors: ['C1', 'C2', 'C3'], jokers: 0 }, at: 'x' }],
    status: 'running',
    verdict: { solvable: true, witness: 'M', method: 'subset-check' },
    trivial: false,
    deadline: null,
    planCache: null,
    ...overrides,
  };
}

describe('deriveView', () => {
  it('computes progress as dominoes over players', () => {
    const view = deriveView(sessionDoc(), 0);
    expect(view.progress).toBe(0.25);
    expect(view.dominoes).toBe(1);
    expect(view.players).toBe(4);
    expect(view.historyLength).toBe(1);
  });

  it('clamps progress at one', () => {
    const doc = sessionDoc({
      current: { chips: [0, 0, 0], jokers: 1, dominoes: 6 },
      status: 'survived',
    });
    expect(deriveView(doc, 0).progress).toBe(1);
  });

  it('derives the countdown from the deadline', () => {
    const now = Date.parse('2026-08-11T17:00:00Z');
    const doc = sessionDoc({ deadline: '2026-08-11T17:15:00Z' });
    const view = deriveView(doc, now);
    expect(view.countdownMs).toBe(15 * 60_000);
    expect(view.countdownLabel).toBe('15:00');
    expect(view.overdue).toBe(false);
  });

  it('flags an expired deadline', () => {
    const now = Date.parse('2026-08-11T17:20:00Z');
    const view = deriveView(sessionDoc({ deadline: '2026-08-11T17:15:00Z' }), now);
    expect(view.overdue).toBe(true);
    expect(view.countdownLabel).toBe('0:00');
  });

  it('has no countdown without a deadline', () => {
    const view = deriveView(sessionDoc(), 0);
    expect(view.countdownMs).toBeNull();
    expect(view.countdownLabel).toBeNull();
  });
});

describe('formatCountdown', () => {
  it('renders minutes and zero-padded seconds', () => {
    expect(formatCountdown(61_000)).toBe('1:01');
    expect(formatCountdown(900_000)).toBe('15:00');
    expect(formatCountdown(-5_000)).toBe('0:00');
  });
});

describe('solvabilityBadge', () => {
  it('names the contained sufficient set', () => {
    expect(solvabilityBadge(deriveView(sessionDoc(), 0))).toBe('solvable (contains M)');
  });

  it('marks unsolvable pools', () => {
    const doc = sessionDoc({ verdict: { solvable: false, witness: null, method: 'subset-check' } });
    expect(solvabilityBadge(deriveView(doc, 0))).toBe('unsolvable');
  });

  it('marks trivial player counts', () => {
    const doc = sessionDoc({ trivial: true });
    expect(solvabilityBadge(deriveView(doc, 0))).toContain('trivial');
  });
});
