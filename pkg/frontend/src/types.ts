import { z } from 'zod';

// Wire schemas for the /v1 devil-play API.  The devil-view schema is strict:
// any extra field in a devil payload (amplitudes, mu, ...) fails validation,
// which is exactly the information-hygiene guarantee the client relies on.

export const historyEventSchema = z
  .object({
    round: z.number().int().nonnegative(),
    actor: z.enum(['angel', 'devil', 'referee']),
    type: z.enum(['move', 'detect', 'place', 'capture', 'survived']),
    site: z.number().int().optional(),
    outcome: z.union([z.literal(0), z.literal(1)]).optional(),
    reason: z.string().optional(),
    caught: z.boolean().optional(),
  })
  .strict();

export const boardCellSchema = z
  .object({
    site: z.number().int().nonnegative(),
    blocked: z.boolean(),
    last_detection: z.union([z.literal(0), z.literal(1)]).nullable(),
  })
  .strict();

export const matchStatusSchema = z.enum(['ongoing', 'angelCaught', 'angelSurvived']);

export const devilViewSchema = z
  .object({
    round: z.number().int().nonnegative(),
    status: matchStatusSchema,
    length: z.number().int().positive(),
    power: z.number().int().positive(),
    horizon: z.number().int().positive(),
    board: z.array(boardCellSchema),
    history: z.array(historyEventSchema),
    session: z.string(),
    angel_strategy: z.string(),
    debug: z.boolean(),
  })
  .strict();

// Spectator views may additionally carry the position distribution and raw
// amplitudes when the session was created in debug mode.
export const spectatorViewSchema = devilViewSchema.safeExtend({
  mu: z.array(z.number()).optional(),
  amplitudes: z
    .array(z.array(z.object({ re: z.number(), im: z.number() }).strict()))
    .nullable()
    .optional(),
});

export const createResponseSchema = z.object({
  id: z.string(),
  view: devilViewSchema,
  config: z.unknown(),
});

export const actionResponseSchema = z.object({
  id: z.string(),
  view: devilViewSchema,
});

export const spectatorResponseSchema = z.object({
  id: z.string(),
  view: spectatorViewSchema,
});

export type HistoryEvent = z.infer<typeof historyEventSchema>;
export type BoardCell = z.infer<typeof boardCellSchema>;
export type MatchStatus = z.infer<typeof matchStatusSchema>;
export type DevilView = z.infer<typeof devilViewSchema>;
export type SpectatorView = z.infer<typeof spectatorViewSchema>;

export interface GameConfigForm {
  length: number;
  power: number;
  horizon: number;
  angelStrategy: string;
  seed: number;
  debug: boolean;
}

export const FORBIDDEN_DEVIL_KEYS = ['amplitudes', 'mu', 'psi', 'statevector'] as const;

/** Recursively assert a devil payload carries no hidden-state fields. */
export function assertNoHiddenState(payload: unknown, path = '$'): void {
  if (Array.isArray(payload)) {
    payload.forEach((item, i) => assertNoHiddenState(item, `${path}[${i}]`));
    return;
  }
  if (payload !== null && typeof payload === 'object') {
    for (const key of Object.keys(payload as Record<string, unknown>)) {
      if ((FORBIDDEN_DEVIL_KEYS as readonly string[]).includes(key)) {
        throw new Error(`devil payload leaked hidden state at ${path}.${key}`);
      }
      assertNoHiddenState((payload as Record<string, unknown>)[key], `${path}.${key}`);
    }
  }
}
