/**
 * Distribution presets for the setup screen.
 *
 * "worst" is the least favorable standard pool (a 3,3,1 sufficient set plus
 * every remaining chip on the most frequent color); "best" packs the
 * maximum number of full sets, which only exists when 2p is divisible by 3.
 */

import type { PieceSetDoc } from './types.js';

export type PresetId = 'worst' | 'best' | 'custom';

export function worstCaseDistribution(players: number): PieceSetDoc | null {
  if (players < 4) {
    return null;
  }
  const q = 2 * players - 7;
  return { chips: [3 + q, 3, 1], jokers: 0, dominoes: 0 };
}

export function bestCaseDistribution(players: number): PieceSetDoc | null {
  if (players < 6 || (2 * players) % 3 !== 0) {
    return null;
  }
  const m = (2 * players) / 3;
  return { chips: [m, m, m], jokers: 0, dominoes: 0 };
}

export function presetDistribution(
  preset: PresetId,
  players: number,
  custom: PieceSetDoc,
): PieceSetDoc | null {
  switch (preset) {
    case 'worst':
      return worstCaseDistribution(players);
    case 'best':
      return bestCaseDistribution(players);
    case 'custom':
      return custom;
  }
}

export function isValidDistribution(dist: PieceSetDoc): boolean {
  return (
    dist.chips.length === 3 &&
    dist.chips.every((c) => Number.isInteger(c) && c >= 0) &&
    Number.isInteger(dist.jokers) &&
    dist.jokers >= 0 &&
    Number.isInteger(dist.dominoes) &&
    dist.dominoes >= 0
  );
}
