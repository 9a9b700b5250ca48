import type { DevilView, GameConfigForm, SpectatorView } from './types.js';

export type Phase = 'setup' | 'playing' | 'finished';

export interface ClientState {
  phase: Phase;
  sessionId: string | null;
  view: DevilView | null;
  spectator: SpectatorView | null;
  pending: boolean;
  error: string | null;
  debug: boolean;
}

export const initialState: ClientState = {
  phase: 'setup',
  sessionId: null,
  view: null,
  spectator: null,
  pending: false,
  error: null,
  debug: false,
};

function phaseFor(view: DevilView): Phase {
  return view.status === 'ongoing' ? 'playing' : 'finished';
}

export function withGameStarted(
  state: ClientState,
  id: string,
  view: DevilView,
  form: GameConfigForm,
): ClientState {
  return {
    ...state,
    phase: phaseFor(view),
    sessionId: id,
    view,
    spectator: null,
    pending: false,
    error: null,
    debug: form.debug,
  };
}

export function withView(state: ClientState, view: DevilView): ClientState {
  return { ...state, phase: phaseFor(view), view, pending: false, error: null };
}

export function withSpectator(state: ClientState, view: SpectatorView): ClientState {
  return { ...state, spectator: view };
}

export function withPending(state: ClientState, pending: boolean): ClientState {
  return { ...state, pending };
}

export function withError(state: ClientState, message: string): ClientState {
  return { ...state, pending: false, error: message };
}

/** Input is unlocked only when a game is running and no request is in flight. */
export function canSubmitMove(state: ClientState): boolean {
  return state.phase === 'playing' && !state.pending && state.view !== null;
}
