import type { DevilView, HistoryEvent, MatchStatus } from './types.js';

// Everything rendered is a pure function of the latest server view (plus the
// pending-input flag); no game logic lives client-side.

export interface BoardCellViewModel {
  index: number;
  blocked: boolean;
  lastDetection: 0 | 1 | null;
  justDetected: boolean;
  justBlocked: boolean;
  mu: number | null;
}

export interface BoardViewModel {
  sites: BoardCellViewModel[];
  round: number;
  status: MatchStatus;
  horizon: number;
}

export interface OutcomeBadge {
  kind: 'none' | 'detected' | 'blocked' | 'caught' | 'survived';
  site: number | null;
  text: string;
}

function lastRoundEvents(view: DevilView): HistoryEvent[] {
  if (view.history.length === 0) {
    return [];
  }
  const lastRound = view.history[view.history.length - 1].round;
  return view.history.filter((event) => event.round === lastRound);
}

export function buildBoardViewModel(view: DevilView, mu?: number[] | null): BoardViewModel {
  const recent = lastRoundEvents(view);
  const justDetected = new Set(
    recent.filter((e) => e.type === 'detect').map((e) => e.site ?? -1),
  );
  const justBlocked = new Set(
    recent.filter((e) => e.type === 'place').map((e) => e.site ?? -1),
  );
  return {
    round: view.round,
    status: view.status,
    horizon: view.horizon,
    sites: view.board.map((cell) => ({
      index: cell.site,
      blocked: cell.blocked,
      lastDetection: cell.last_detection,
      justDetected: justDetected.has(cell.site),
      justBlocked: justBlocked.has(cell.site),
      mu: mu ? (mu[cell.site] ?? null) : null,
    })),
  };
}

export function outcomeBadge(view: DevilView): OutcomeBadge {
  const recent = lastRoundEvents(view);
  const capture = recent.find((e) => e.type === 'capture');
  const moveCaught = recent.find((e) => e.type === 'move' && e.caught === true);
  if (view.status === 'angelCaught') {
    const site = capture?.site ?? null;
    const how = capture
      ? `surrounded at site ${site}`
      : moveCaught
        ? 'no unblocked destination survived the move'
        : 'caught';
    return { kind: 'caught', site, text: `Angel caught — ${how}` };
  }
  if (view.status === 'angelSurvived') {
    return {
      kind: 'survived',
      site: null,
      text: `Angel survived all ${view.horizon} rounds`,
    };
  }
  const detection = [...recent].reverse().find((e) => e.type === 'detect');
  if (!detection) {
    return { kind: 'none', site: null, text: '' };
  }
  if (detection.outcome === 1) {
    return {
      kind: 'detected',
      site: detection.site ?? null,
      text: `Angel detected at site ${detection.site}!`,
    };
  }
  return {
    kind: 'blocked',
    site: detection.site ?? null,
    text: `Site ${detection.site} clear — block placed`,
  };
}

export interface HistoryEntry {
  round: number;
  actor: string;
  type: string;
  site: number | null;
  outcome: 0 | 1 | null;
  label: string;
}

/** Chronological event list; one entry per server history event, in order. */
export function buildHistoryList(view: DevilView): HistoryEntry[] {
  return view.history.map((event) => {
    let label: string;
    switch (event.type) {
      case 'move':
        label = event.caught ? 'Angel moved and was caught' : 'Angel moved';
        break;
      case 'detect':
        label =
          event.outcome === 1
            ? `Devil detected the Angel at site ${event.site}`
            : `Devil measured site ${event.site}: empty`;
        break;
      case 'place':
        label = `Devil placed a block at site ${event.site}`;
        break;
      case 'capture':
        label = `Angel caught (${event.reason ?? 'trapped'}) at site ${event.site}`;
        break;
      case 'survived':
        label = 'Angel survived to the horizon';
        break;
      default:
        label = event.type;
    }
    return {
      round: event.round,
      actor: event.actor,
      type: event.type,
      site: event.site ?? null,
      outcome: event.outcome ?? null,
      label: `round ${event.round}: ${label}`,
    };
  });
}
