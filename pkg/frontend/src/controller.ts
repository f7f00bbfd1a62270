/**
 * Headless controller behind the console: owns the session snapshot, the
 * exchange form, the current suggestion and any service error, and pushes
 * every change to the render layer.
 *
 * One mutation is in flight at a time; a rejected exchange surfaces its
 * reason without touching the snapshot (the service is the single source
 * of truth).
 */

import { ApiError, SessionApi } from './api.js';
import {
  FormState,
  composedExchange,
  emptyForm,
  formFromExchange,
} from './form.js';
import type { ExchangeDoc, PieceSetDoc, SessionDoc, SuggestionDoc } from './types.js';

export interface ConsoleState {
  session: SessionDoc | null;
  suggestion: SuggestionDoc | null;
  form: FormState;
  error: string | null;
  busy: boolean;
}

type Listener = (state: ConsoleState) => void;

export class FacilitatorController {
  private readonly api: SessionApi;
  private state: ConsoleState = {
    session: null,
    suggestion: null,
    form: emptyForm(),
    error: null,
    busy: false,
  };
  private listeners: Listener[] = [];

  constructor(api: SessionApi) {
    this.api = api;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  get snapshot(): ConsoleState {
    return this.state;
  }

  private push(partial: Partial<ConsoleState>): void {
    this.state = { ...this.state, ...partial };
    for (const listener of this.listeners) {
      listener(this.state);
    }
  }

  async createSession(
    players: number,
    initial: PieceSetDoc,
    deadline?: string,
  ): Promise<SessionDoc> {
    const session = await this.guarded(() =>
      this.api.createSession(players, initial, deadline),
    );
    this.push({ session, suggestion: null, form: emptyForm() });
    await this.refreshSuggestion();
    return session;
  }

  /** Resume an existing session, e.g. after the console was closed. */
  async loadSession(id: string): Promise<SessionDoc> {
    const session = await this.guarded(() => this.api.getSession(id));
    this.push({ session, suggestion: null, form: emptyForm() });
    await this.refreshSuggestion();
    return session;
  }

  setForm(form: FormState): void {
    this.push({ form });
  }

  prefillFromSuggestion(): void {
    const exchange = this.state.suggestion?.exchange;
    if (exchange) {
      this.push({ form: formFromExchange(exchange) });
    }
  }

  async submitExchange(): Promise<void> {
    const exchange = composedExchange(this.state.form);
    if (!exchange || !this.state.session) {
      return;
    }
    await this.recordExchange(exchange);
  }

  async submitSuggested(): Promise<void> {
    const exchange = this.state.suggestion?.exchange;
    if (exchange) {
      await this.recordExchange(exchange);
    }
  }

  async recordExchange(exchange: ExchangeDoc): Promise<void> {
    if (!this.state.session) {
      return;
    }
    const id = this.state.session.id;
    try {
      const session = await this.guarded(() => this.api.recordExchange(id, exchange));
      this.push({ session, form: emptyForm() });
      await this.refreshSuggestion();
    } catch (err) {
      if (!(err instanceof ApiError)) {
        throw err;
      }
      // 409 etc: show why, keep the snapshot as the service left it.
      this.push({ error: err.message });
    }
  }

  async undo(): Promise<void> {
    if (!this.state.session) {
      return;
    }
    const id = this.state.session.id;
    try {
      const session = await this.guarded(() => this.api.undo(id));
      this.push({ session });
      await this.refreshSuggestion();
    } catch (err) {
      if (!(err instanceof ApiError)) {
        throw err;
      }
      this.push({ error: err.message });
    }
  }

  /** Poll tick: re-fetch the session document and the suggestion. */
  async refresh(): Promise<void> {
    if (!this.state.session || this.state.busy) {
      return;
    }
    try {
      const session = await this.api.getSession(this.state.session.id);
      this.push({ session, error: this.state.error });
      await this.refreshSuggestion();
    } catch (err) {
      if (!(err instanceof ApiError) && !(err instanceof TypeError)) {
        throw err;
      }
      // network hiccups are shown, never destructive
      this.push({ error: err instanceof Error ? err.message : String(err) });
    }
  }

  private async refreshSuggestion(): Promise<void> {
    if (!this.state.session) {
      return;
    }
    try {
      const suggestion = await this.api.suggestion(this.state.session.id);
      this.push({ suggestion });
    } catch (err) {
      if (!(err instanceof ApiError)) {
        throw err;
      }
      this.push({ suggestion: null });
    }
  }

  private async guarded<T>(call: () => Promise<T>): Promise<T> {
    if (this.state.busy) {
      throw new ApiError('Busy', 'another request is in flight', 0);
    }
    this.push({ busy: true, error: null });
    try {
      return await call();
    } finally {
      this.push({ busy: false });
    }
  }
}
