/**
 * Typed client for the session service HTTP API.
 *
 * Non-2xx responses carry {code, message}; they surface as ApiError so the
 * UI can show the reason without touching its own state.
 */

import type {
  ExchangeDoc,
  PieceSetDoc,
  ScriptStepDoc,
  SessionDoc,
  SuggestionDoc,
} from './types.js';

export class ApiError extends Error {
  readonly code: string;
  readonly status: number;

  constructor(code: string, message: string, status: number) {
    super(message);
    this.code = code;
    this.status = status;
  }
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class SessionApi {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn?: FetchLike) {
    this.base = baseUrl.replace(/\/+$/, '');
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method, headers: {} };
    if (body !== undefined) {
      init.headers = { 'Content-Type': 'application/json' };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(this.base + path, init);
    const text = await response.text();
    const payload = text ? JSON.parse(text) : {};
    if (!response.ok) {
      const code = typeof payload.code === 'string' ? payload.code : 'HttpError';
      const message =
        typeof payload.message === 'string' ? payload.message : `HTTP ${response.status}`;
      throw new ApiError(code, message, response.status);
    }
    return payload as T;
  }

  async health(): Promise<boolean> {
    try {
      await this.request<{ status: string }>('GET', '/healthz');
      return true;
    } catch {
      return false;
    }
  }

  async createSession(
    players: number,
    initial: PieceSetDoc,
    deadline?: string,
  ): Promise<SessionDoc> {
    const body: Record<string, unknown> = { players, initial };
    if (deadline) {
      body.deadline = deadline;
    }
    const doc = await this.request<{ session: SessionDoc }>('POST', '/sessions', body);
    return doc.session;
  }

  async getSession(id: string): Promise<SessionDoc> {
    const doc = await this.request<{ session: SessionDoc }>('GET', `/sessions/${id}`);
    return doc.session;
  }

  async recordExchange(id: string, exchange: ExchangeDoc): Promise<SessionDoc> {
    const doc = await this.request<{ session: SessionDoc }>(
      'POST',
      `/sessions/${id}/exchanges`,
      { exchange },
    );
    return doc.session;
  }

  async undo(id: string): Promise<SessionDoc> {
    const doc = await this.request<{ session: SessionDoc }>('POST', `/sessions/${id}/undo`);
    return doc.session;
  }

  async suggestion(id: string): Promise<SuggestionDoc> {
    const doc = await this.request<{ suggestion: SuggestionDoc }>(
      'GET',
      `/sessions/${id}/suggestion`,
    );
    return doc.suggestion;
  }

  async plan(id: string): Promise<ScriptStepDoc[]> {
    const doc = await this.request<{ script: ScriptStepDoc[] }>(
      'GET',
      `/sessions/${id}/plan`,
    );
    return doc.script;
  }
}
