// Scripted playthroughs: the engine as Maker beats a greedy Breaker on the
// nunchaku-4 preset in exactly three of its moves, and as Breaker it never
// loses the two-disjoint-edges preset.

import assert from 'node:assert/strict';
import { after, before, test } from 'node:test';
import { GameSession } from '../src/session.js';
import { RunningService, loadPreset, startService, stopService } from './helpers.js';

let svc: RunningService;

before(async () => {
  svc = await startService();
});

after(async () => {
  await stopService(svc);
});

function greedyMove(session: GameSession): string {
  // scripted greedy Breaker: lowest-named legal vertex
  const moves = session.legalMoves().sort();
  assert.ok(moves.length > 0, 'greedy player has no move');
  return moves[0];
}

test('nunchaku-4: engine Maker wins in exactly 3 engine moves', async () => {
  const session = await GameSession.load(svc.client, loadPreset('nunchaku4'), 'breaker');
  await session.refresh();
  assert.equal(session.verdict?.winner, 'maker');
  let engineMoves = 0;
  while (!session.view.game_over) {
    if (session.view.to_move === 'maker') {
      await session.playEngine();
      engineMoves += 1;
      assert.ok(engineMoves <= 8, 'runaway game');
    } else {
      await session.playHuman(greedyMove(session));
    }
  }
  assert.equal(engineMoves, 3);
  assert.ok(session.threats.some((t) => t.kind === 'fully_marked_edge'));
});

test('two-disjoint-edges: engine Breaker never loses to greedy Maker', async () => {
  const session = await GameSession.load(svc.client, loadPreset('two-disjoint-edges'), 'maker');
  await session.refresh();
  assert.equal(session.verdict?.winner, 'breaker');
  while (!session.view.game_over) {
    if (session.view.to_move === 'maker') {
      await session.playHuman(greedyMove(session));
    } else {
      await session.playEngine();
    }
  }
  assert.ok(!session.threats.some((t) => t.kind === 'fully_marked_edge'));
});
