/**
 * Derived, render-ready session view: progress toward the domino goal and
 * the countdown remaining.  Pure projection of the service document; the
 * countdown is display-only and seeded from the session deadline.
 */

import type { SessionDoc } from './types.js';

export interface SessionView {
  id: string;
  players: number;
  status: string;
  dominoes: number;
  chips: number[];
  jokers: number;
  progress: number;
  solvable: boolean;
  witness: string | null;
  trivial: boolean;
  historyLength: number;
  countdownMs: number | null;
  countdownLabel: string | null;
  overdue: boolean;
}

export function deriveView(doc: SessionDoc, nowMs: number): SessionView {
  const players = doc.config.players;
  const dominoes = doc.current.dominoes;
  const progress = players > 0 ? Math.min(1, dominoes / players) : 0;
  let countdownMs: number | null = null;
  if (doc.deadline) {
    const deadlineMs = Date.parse(doc.deadline);
    if (!Number.isNaN(deadlineMs)) {
      countdownMs = deadlineMs - nowMs;
    }
  }
  return {
    id: doc.id,
    players,
    status: doc.status,
    dominoes,
    chips: [...doc.current.chips],
    jokers: doc.current.jokers,
    progress,
    solvable: doc.verdict.solvable,
    witness: doc.verdict.witness,
    trivial: doc.trivial,
    historyLength: doc.history.length,
    countdownMs,
    countdownLabel: countdownMs === null ? null : formatCountdown(countdownMs),
    overdue: countdownMs !== null && countdownMs < 0,
  };
}

export function formatCountdown(ms: number): string {
  const clamped = Math.max(0, Math.floor(ms / 1000));
  const minutes = Math.floor(clamped / 60);
  const seconds = clamped % 60;
  return `${minutes}:${String(seconds).padStart(2, '0')}`;
}

export function solvabilityBadge(view: SessionView): string {
  if (view.trivial) {
    return 'trivial: groups this small cannot all survive';
  }
  if (!view.solvable) {
    return 'unsolvable';
  }
  return view.witness ? `solvable (contains ${view.witness})` : 'solvable';
}
