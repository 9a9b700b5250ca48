import {
  actionResponseSchema,
  assertNoHiddenState,
  createResponseSchema,
  spectatorResponseSchema,
  type DevilView,
  type GameConfigForm,
  type SpectatorView,
} from './types.js';

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export interface SessionHandle {
  id: string;
  view: DevilView;
}

function configBody(form: GameConfigForm) {
  return {
    config: {
      walker: {
        power: form.power,
        length: form.length,
        initial_position: Math.floor(form.length / 2),
      },
      horizon: form.horizon,
      seed: form.seed,
    },
    angel_strategy: form.angelStrategy,
    debug: form.debug,
  };
}

async function requestJson(
  fetchFn: FetchLike,
  url: string,
  init?: RequestInit,
): Promise<unknown> {
  const response = await fetchFn(url, init);
  const text = await response.text();
  const body = text ? JSON.parse(text) : null;
  if (!response.ok) {
    const detail =
      body && typeof body === 'object' && 'detail' in body
        ? String((body as { detail: unknown }).detail)
        : response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body;
}

export async function createGame(
  base: string,
  form: GameConfigForm,
  fetchFn: FetchLike = fetch,
): Promise<SessionHandle> {
  const body = await requestJson(fetchFn, `${base}/v1/games`, {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify(configBody(form)),
  });
  assertNoHiddenState(body);
  const parsed = createResponseSchema.parse(body);
  return { id: parsed.id, view: parsed.view };
}

export async function submitAction(
  base: string,
  id: string,
  site: number,
  fetchFn: FetchLike = fetch,
): Promise<DevilView> {
  const body = await requestJson(fetchFn, `${base}/v1/games/${id}/action`, {
    method: 'POST',
    headers: { 'content-type': 'application/json' },
    body: JSON.stringify({ site }),
  });
  assertNoHiddenState(body);
  return actionResponseSchema.parse(body).view;
}

export async function fetchDevilView(
  base: string,
  id: string,
  fetchFn: FetchLike = fetch,
): Promise<DevilView> {
  const body = await requestJson(fetchFn, `${base}/v1/games/${id}?view=devil`);
  assertNoHiddenState(body);
  return actionResponseSchema.parse(body).view;
}

export async function fetchSpectatorView(
  base: string,
  id: string,
  fetchFn: FetchLike = fetch,
): Promise<SpectatorView> {
  const body = await requestJson(fetchFn, `${base}/v1/games/${id}?view=spectator`);
  return spectatorResponseSchema.parse(body).view;
}

export async function deleteGame(
  base: string,
  id: string,
  fetchFn: FetchLike = fetch,
): Promise<void> {
  const response = await fetchFn(`${base}/v1/games/${id}`, { method: 'DELETE' });
  if (!response.ok && response.status !== 404) {
    throw new ApiError(response.status, response.statusText);
  }
}
