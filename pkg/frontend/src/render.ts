import type { ClientState } from './state.js';
import { canSubmitMove } from './state.js';
import {
  buildBoardViewModel,
  buildHistoryList,
  outcomeBadge,
  type BoardCellViewModel,
} from './view-model.js';

// Rendering produces an HTML string from the client state; main.ts mounts it
// and wires events by id/class.  Keeping this a pure string function makes
// the whole render path testable without a browser.

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}

function cellClasses(cell: BoardCellViewModel): string {
  const classes = ['cell'];
  if (cell.blocked) classes.push('blocked');
  if (cell.justBlocked) classes.push('just-blocked');
  if (cell.justDetected) classes.push('just-detected');
  if (cell.lastDetection === 1) classes.push('seen-angel');
  return classes.join(' ');
}

function renderCell(cell: BoardCellViewModel, clickable: boolean): string {
  const mark = cell.blocked ? '■' : cell.lastDetection === null ? '·' : String(cell.lastDetection);
  const muBar =
    cell.mu !== null
      ? `<div class="mu-bar" style="height:${Math.round(cell.mu * 48)}px" title="mu=${cell.mu.toFixed(4)}"></div>`
      : '';
  const disabled = clickable && !cell.blocked ? '' : ' disabled';
  return (
    `<div class="cell-stack">${muBar}` +
    `<button class="${cellClasses(cell)}" data-site="${cell.index}"${disabled}>` +
    `<span class="cell-mark">${mark}</span><span class="cell-index">${cell.index}</span>` +
    `</button></div>`
  );
}

export function renderSetupForm(error: string | null): string {
  return `
  <form id="setup-form" class="setup">
    <h1>Angel hunt</h1>
    <p>You are the Devil: each round the Angel walks, then you measure one
       site. Finding nothing lets you place a block; corner the Angel to win.</p>
    <label>Lattice length <input name="length" type="number" value="13" min="3"></label>
    <label>Angel power k <input name="power" type="number" value="1" min="1"></label>
    <label>Rounds <input name="horizon" type="number" value="20" min="1"></label>
    <label>Seed <input name="seed" type="number" value="0"></label>
    <label>Angel strategy
      <select name="strategy">
        <option value="fixed-coin">fixed-coin</option>
        <option value="random-coin">random-coin</option>
        <option value="greedy-spread">greedy-spread</option>
      </select>
    </label>
    <label><input name="debug" type="checkbox"> debug (spectator overlay)</label>
    <button type="submit">Start game</button>
    ${error ? `<p class="error" role="alert">${escapeHtml(error)}</p>` : ''}
  </form>`;
}

export function renderGame(state: ClientState): string {
  const view = state.view;
  if (!view) {
    return renderSetupForm(state.error);
  }
  const mu = state.debug && state.spectator?.mu ? state.spectator.mu : null;
  const board = buildBoardViewModel(view, mu);
  const badge = outcomeBadge(view);
  const history = buildHistoryList(view);
  const clickable = canSubmitMove(state);

  const banner =
    board.status === 'angelCaught'
      ? '<div class="banner devil-wins">You caught the Angel!</div>'
      : board.status === 'angelSurvived'
        ? '<div class="banner angel-wins">The Angel escaped you.</div>'
        : '';

  return `
  <div class="game">
    <div class="status-line">
      <span>round ${board.round} / ${board.horizon}</span>
      <span class="status">${board.status}</span>
    </div>
    ${banner}
    ${badge.kind !== 'none' ? `<div class="badge badge-${badge.kind}">${escapeHtml(badge.text)}</div>` : ''}
    <div class="board" id="board">${board.sites.map((c) => renderCell(c, clickable)).join('')}</div>
    ${state.pending ? '<div class="pending">waiting for the Angel…</div>' : ''}
    ${state.error ? `<p class="error" role="alert">${escapeHtml(state.error)}</p>` : ''}
    <ol class="history" id="history">
      ${history.map((h) => `<li class="history-${h.actor}">${escapeHtml(h.label)}</li>`).join('')}
    </ol>
    <button id="new-game">New game</button>
  </div>`;
}

export function renderApp(state: ClientState): string {
  return state.phase === 'setup' ? renderSetupForm(state.error) : renderGame(state);
}
