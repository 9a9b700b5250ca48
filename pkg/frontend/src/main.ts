import { GameController } from './controller.js';
import { renderApp } from './render.js';
import type { GameConfigForm } from './types.js';

const API_BASE = (window as { QEFG_API_BASE?: string }).QEFG_API_BASE ?? '';

const root = document.getElementById('app');
if (!root) {
  throw new Error('missing #app mount point');
}

const controller = new GameController(API_BASE, fetch.bind(window), (state) => {
  root.innerHTML = renderApp(state);
});

function readForm(form: HTMLFormElement): GameConfigForm {
  const data = new FormData(form);
  return {
    length: Number(data.get('length')),
    power: Number(data.get('power')),
    horizon: Number(data.get('horizon')),
    seed: Number(data.get('seed')),
    angelStrategy: String(data.get('strategy') ?? 'fixed-coin'),
    debug: data.get('debug') === 'on',
  };
}

root.addEventListener('submit', (event) => {
  const target = event.target as HTMLElement;
  if (target.id === 'setup-form') {
    event.preventDefault();
    void controller.startGame(readForm(target as HTMLFormElement));
  }
});

root.addEventListener('click', (event) => {
  const target = event.target as HTMLElement;
  const cell = target.closest('button.cell') as HTMLButtonElement | null;
  if (cell && !cell.disabled && cell.dataset.site !== undefined) {
    void controller.playSite(Number(cell.dataset.site));
    return;
  }
  if (target.closest('#new-game')) {
    controller.reset();
  }
});

controller.reset();
