// Test harness: boots the real engine service in a child process and tears
// it down afterwards. Tests talk to it exactly like the browser client does.

import { ChildProcess, spawn } from 'node:child_process';
import { readFileSync } from 'node:fs';
import { BoardDocument, ServiceClient } from '../src/api.js';

export interface RunningService {
  proc: ChildProcess;
  client: ServiceClient;
  baseUrl: string;
}

export function loadPreset(name: string): BoardDocument {
  const url = new URL(`../../presets/${name}.json`, import.meta.url);
  return JSON.parse(readFileSync(url, 'utf-8')) as BoardDocument;
}

export async function startService(): Promise<RunningService> {
  const port = 18200 + Math.floor(Math.random() * 1000);
  const baseUrl = `http://127.0.0.1:${port}`;
  const code =
    'from mb3.service import create_app\n' +
    'import uvicorn\n' +
    `uvicorn.run(create_app(), host="127.0.0.1", port=${port}, log_level="error")\n`;
  const proc = spawn('python3', ['-c', code], { stdio: ['ignore', 'inherit', 'inherit'] });
  const deadline = Date.now() + 30_000;
  for (;;) {
    try {
      const res = await fetch(`${baseUrl}/position/warmup-probe`);
      if (res.status === 404) break;
    } catch {
      // not up yet
    }
    if (Date.now() > deadline) {
      proc.kill();
      throw new Error('engine service did not come up in time');
    }
    await new Promise((r) => setTimeout(r, 150));
  }
  return { proc, client: new ServiceClient(baseUrl), baseUrl };
}

export async function stopService(svc: RunningService): Promise<void> {
  svc.proc.kill('SIGTERM');
  await new Promise((r) => setTimeout(r, 100));
  if (!svc.proc.killed) svc.proc.kill('SIGKILL');
}
