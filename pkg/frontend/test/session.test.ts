// Threat-overlay fidelity and legality-mirror soundness, scripted and
// headless against the live service.

import assert from 'node:assert/strict';
import { after, before, test } from 'node:test';
import { ServiceHttpError } from '../src/api.js';
import { computeOverlays, edgeKey } from '../src/overlay.js';
import { GameSession } from '../src/session.js';
import { RunningService, loadPreset, startService, stopService } from './helpers.js';

let svc: RunningService;

before(async () => {
  svc = await startService();
});

after(async () => {
  await stopService(svc);
});

async function scanLegality(session: GameSession): Promise<void> {
  // Every cell of the board: the mirror and the service must agree, both on
  // acceptance and rejection. Each probe replays the game on a scratch
  // session so the session under test is untouched.
  for (const vertex of session.view.vertices) {
    const mirror = session.isLegal(vertex);
    const scratch = await svc.client.load(session.originalBoard);
    for (const [, v] of session.view.history) {
      await svc.client.move(scratch.session, v);
    }
    let accepted = true;
    try {
      await svc.client.move(scratch.session, vertex);
    } catch (err) {
      if (!(err instanceof ServiceHttpError) || err.status !== 409) throw err;
      accepted = false;
    }
    assert.equal(
      mirror,
      accepted,
      `mirror says ${mirror} but service says ${accepted} for ${vertex}`,
    );
  }
}

for (const preset of ['nunchaku4', 'necklace4', 'two-disjoint-edges']) {
  test(`overlays match /threats witness ids on ${preset}`, async () => {
    const session = await GameSession.load(svc.client, loadPreset(preset), 'breaker');
    await session.refresh();
    const overlays = computeOverlays(session.threats);
    const reported = await svc.client.threats(session.sessionId);
    const reportedIds = new Set(reported.threats.map((t) => t.id));
    assert.equal(overlays.length, reported.threats.length);
    for (const o of overlays) {
      assert.ok(reportedIds.has(o.witnessId), `overlay ${o.witnessId} has no witness`);
      const wit = reported.threats.find((t) => t.id === o.witnessId)!;
      assert.deepEqual(o.edgeKeys.sort(), wit.edges.map(edgeKey).sort());
      assert.deepEqual(o.vertices, [...wit.vertices].sort());
    }
  });
}

test('legality mirror agrees with the service on a full board scan', async () => {
  const session = await GameSession.load(svc.client, loadPreset('nunchaku4'), 'breaker');
  await session.refresh();
  await scanLegality(session);
  // after one full round the scan must still agree
  await session.playEngine();
  await session.playHuman(session.legalMoves()[0]);
  await session.refresh();
  await scanLegality(session);
  // mirror matches the service's own legal-move list as well
  const legal = await svc.client.legalMoves(session.sessionId);
  assert.deepEqual(session.legalMoves().sort(), legal.moves);
});

test('overlays refresh as threats appear', async () => {
  const session = await GameSession.load(svc.client, loadPreset('two-disjoint-edges'), 'maker');
  await session.refresh();
  assert.equal(computeOverlays(session.threats).length, 0);
  await session.playHuman('a');
  await session.playEngine();
  await session.refresh();
  const overlays = computeOverlays(session.threats);
  const reported = await svc.client.threats(session.sessionId);
  assert.deepEqual(
    overlays.map((o) => o.witnessId).sort(),
    reported.threats.map((t) => t.id).sort(),
  );
});

test('what-if verdict comes from the service', async () => {
  const session = await GameSession.load(svc.client, loadPreset('nunchaku4'), 'maker');
  await session.refresh();
  const verdict = await session.whatIf('v4'); // dichotomy midpoint
  assert.equal(verdict.winner, 'maker');
  // the scratch probe must not disturb the live session
  const live = await svc.client.position(session.sessionId);
  assert.equal(live.history.length, 0);
});
