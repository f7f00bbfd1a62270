/**
 * Wire types mirroring the session service documents.
 *
 * The console renders these verbatim; it never evaluates game rules
 * locally, so every field here is exactly what the service sent.
 */

export type ColorName = 'C1' | 'C2' | 'C3';

export const COLOR_NAMES: ColorName[] = ['C1', 'C2', 'C3'];

export interface PieceSetDoc {
  chips: number[];
  jokers: number;
  dominoes: number;
}

export interface Rule1Doc {
  rule: 1;
  colors: ColorName[];
  jokers: number;
}

export interface Rule2Doc {
  rule: 2;
}

export type ExchangeDoc = Rule1Doc | Rule2Doc;

export interface VerdictDoc {
  solvable: boolean;
  witness: 'M' | 'N' | null;
  method: string;
}

export interface HistoryEntryDoc {
  exchange: ExchangeDoc;
  at: string;
}

export interface ScriptStepDoc {
  before: PieceSetDoc;
  exchange: ExchangeDoc;
  after: PieceSetDoc;
  phase: string;
}

export type SessionStatus = 'running' | 'survived' | 'stuck';

export interface SessionDoc {
  id: string;
  config: { players: number; initial: PieceSetDoc };
  current: PieceSetDoc;
  history: HistoryEntryDoc[];
  status: SessionStatus;
  verdict: VerdictDoc;
  trivial: boolean;
  deadline: string | null;
  planCache: ScriptStepDoc[] | null;
}

export interface SuggestionDoc {
  exchange: ExchangeDoc | null;
  rationale: string | null;
  remainingPlanCost: number | null;
}

export interface ErrorDoc {
  code: string;
  message: string;
}

export function describeExchange(exchange: ExchangeDoc): string {
  if (exchange.rule === 2) {
    return 'Rule 2: 3 dominoes → 7 jokers';
  }
  const colors = exchange.colors.length ? exchange.colors.join('+') : 'no chips';
  const jokers = exchange.jokers === 1 ? '1 joker' : `${exchange.jokers} jokers`;
  return exchange.jokers > 0 ? `Rule 1: ${colors} + ${jokers}` : `Rule 1: ${colors}`;
}
