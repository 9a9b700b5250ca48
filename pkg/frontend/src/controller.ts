import { ApiError, createGame, fetchDevilView, fetchSpectatorView, submitAction } from './api.js';
import type { FetchLike } from './api.js';
import {
  canSubmitMove,
  initialState,
  withError,
  withGameStarted,
  withPending,
  withSpectator,
  withView,
  type ClientState,
} from './state.js';
import type { GameConfigForm } from './types.js';

/** Client-side form validation; the server re-validates everything. */
export function validateForm(form: GameConfigForm): string | null {
  if (!Number.isInteger(form.length) || form.length <= 2 * form.power) {
    return `lattice length must be an integer greater than ${2 * form.power} (twice the power)`;
  }
  if (!Number.isInteger(form.power) || form.power < 1) {
    return 'power must be a positive integer';
  }
  if (!Number.isInteger(form.horizon) || form.horizon < 1) {
    return 'rounds must be a positive integer';
  }
  return null;
}

/**
 * Drives one game session against the service.  All rendering happens via
 * the onChange callback; the state it receives is a pure function of the
 * latest server view plus the pending flag.
 */
export class GameController {
  state: ClientState = initialState;

  constructor(
    private readonly base: string,
    private readonly fetchFn: FetchLike = fetch,
    private readonly onChange: (state: ClientState) => void = () => {},
  ) {}

  private update(state: ClientState): void {
    this.state = state;
    this.onChange(state);
  }

  reset(): void {
    this.update(initialState);
  }

  async startGame(form: GameConfigForm): Promise<void> {
    const problem = validateForm(form);
    if (problem) {
      this.update(withError(this.state, problem));
      return;
    }
    this.update(withPending(this.state, true));
    try {
      const handle = await createGame(this.base, form, this.fetchFn);
      this.update(withGameStarted(this.state, handle.id, handle.view, form));
      if (form.debug) {
        await this.refreshSpectator();
      }
    } catch (err) {
      this.update(withError(this.state, describe(err)));
    }
  }

  async playSite(site: number): Promise<void> {
    if (!canSubmitMove(this.state) || this.state.sessionId === null) {
      return;
    }
    this.update(withPending(this.state, true));
    try {
      const view = await submitAction(this.base, this.state.sessionId, site, this.fetchFn);
      this.update(withView(this.state, view));
      if (this.state.debug) {
        await this.refreshSpectator();
      }
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // The match ended server-side; resync instead of surfacing an error.
        await this.refresh();
        return;
      }
      this.update(withError(this.state, describe(err)));
    }
  }

  /** Poll the latest devil view (turn-based play needs no push channel). */
  async refresh(): Promise<void> {
    if (this.state.sessionId === null) {
      return;
    }
    try {
      const view = await fetchDevilView(this.base, this.state.sessionId, this.fetchFn);
      this.update(withView(this.state, view));
      if (this.state.debug) {
        await this.refreshSpectator();
      }
    } catch (err) {
      this.update(withError(this.state, describe(err)));
    }
  }

  private async refreshSpectator(): Promise<void> {
    if (this.state.sessionId === null) {
      return;
    }
    const spectator = await fetchSpectatorView(this.base, this.state.sessionId, this.fetchFn);
    this.update(withSpectator(this.state, spectator));
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.detail;
  }
  return err instanceof Error ? err.message : String(err);
}
