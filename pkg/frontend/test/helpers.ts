// Spawns the real backend (and its CLI) for end-to-end UI tests.

import { spawn, spawnSync, type ChildProcess } from 'node:child_process';
import { mkdtempSync, readFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

const HERE = dirname(fileURLToPath(import.meta.url));
// compiled location is frontend/build/test/, sources sit two levels up
export const REPO_ROOT = join(HERE, '..', '..', '..');
export const DATA_DIR = join(REPO_ROOT, 'src', 'moscow_dss', 'data');
export const KB_PATH = join(DATA_DIR, 'dao_kb.json');

const DSS_BIN = process.env.DSS_BIN ?? 'dss';

export interface Backend {
  baseUrl: string;
  child: ChildProcess;
  stop(): void;
}

export function readCaseDoc(name: string): Record<string, unknown> {
  return JSON.parse(readFileSync(join(DATA_DIR, 'cases', `${name}.json`), 'utf-8'));
}

export async function startBackend(): Promise<Backend> {
  const storeDir = mkdtempSync(join(tmpdir(), 'dss-ui-test-'));
  const child = spawn(
    DSS_BIN,
    ['serve', '--kb', KB_PATH, '--store', storeDir, '--listen', '127.0.0.1:0'],
    { env: { ...process.env, PYTHONUNBUFFERED: '1' }, stdio: ['ignore', 'pipe', 'inherit'] },
  );
  const baseUrl = await new Promise<string>((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error('service did not start within 15s')), 15000);
    let buffer = '';
    child.stdout!.on('data', (chunk: Buffer) => {
      buffer += chunk.toString();
      const match = buffer.match(/listening on (http:\/\/[\d.]+:\d+)/);
      if (match) {
        clearTimeout(timer);
        resolve(match[1]);
      }
    });
    child.on('exit', (code) => {
      clearTimeout(timer);
      reject(new Error(`service exited early with code ${code}`));
    });
  });
  return {
    baseUrl,
    child,
    stop() {
      child.kill('SIGTERM');
    },
  };
}

/** Runs `dss relax --format json` and returns the parsed plan. */
export function cliRelaxPlan(casePath: string): {
  steps: { requirement: { featureId: string }; fromPriority: string; toPriority: string }[];
} {
  const result = spawnSync(
    DSS_BIN,
    ['relax', '--kb', KB_PATH, '--case', casePath, '--format', 'json'],
    { encoding: 'utf-8' },
  );
  if (result.status !== 0) {
    throw new Error(`dss relax failed: ${result.stderr}`);
  }
  return JSON.parse(result.stdout);
}

export function caseFixturePath(name: string): string {
  return join(DATA_DIR, 'cases', `${name}.json`);
}
