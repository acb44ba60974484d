from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Dict, List

from tqdm import tqdm

import src
from src.command.base import Command, RunConfig
from src.model import SystemSpec
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('runner')

AnyDict = Dict[str, Any]
# run plumbing that does not change the computed table
_ECHO_EXCLUDED = ('name', 'root', 'config_file', 'dump_config', 'output', 'progress', 'hydra')


def format_value(value) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        if math.isnan(value):
            return 'nan'
        if math.isinf(value):
            return 'inf' if value > 0 else '-inf'
        return format(value, '.17g')
    if value is None:
        return ''
    return str(value)


def _json_value(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def echo_config(resolved: AnyDict) -> AnyDict:
    return {k: v for k, v in sorted(resolved.items()) if k not in _ECHO_EXCLUDED}


class Pipeline:
    """Evaluates one command over its tasks and writes the table atomically."""

    def __init__(self, command: Command, run: RunConfig, spec: SystemSpec, system_node, resolved: AnyDict):
        self.command = command
        self.run = run
        self.spec = spec
        self.system_node = system_node
        self.resolved = resolved

    def compute(self):
        acc = self.run.accuracy
        self.command.prepare(self.spec, self.system_node)
        columns = self.command.columns(self.spec, self.system_node)
        tasks = list(self.command.tasks(self.spec, self.system_node))
        _info(f'{self.command.name}: {len(tasks)} tasks on {self.run.n_jobs} worker(s)')

        def job(task):
            return self.command.evaluate(self.spec, self.system_node, task, acc)

        with ThreadPoolExecutor(max_workers=self.run.n_jobs) as pool:
            # map yields in submission order
            batches = pool.map(job, tasks)
            rows: List[list] = []
            for batch in tqdm(batches, total=len(tasks), disable=not self.run.progress, desc=self.command.name):
                for row in batch:
                    assert len(row) == len(columns), (row, columns)
                    rows.append(row)
        return columns, rows

    def meta(self) -> AnyDict:
        return {'library': 'qce1d', 'version': src.__version__, 'command': self.command.name,
                'config': echo_config(self.resolved), **self.command.meta()}

    def write(self, path: Path, columns, rows, meta: AnyDict):
        partial = path.with_name(path.name + '.partial')
        try:
            with open(partial, 'w', newline='') as f:
                if self.run.output_format == 'csv':
                    f.write(f'# {meta["library"]} {meta["version"]}\n')
                    f.write(f'# command: {meta["command"]}\n')
                    for key, value in meta.items():
                        if key not in ('library', 'version', 'command'):
                            f.write(f'# {key}: {json.dumps(value, sort_keys=True)}\n')
                    writer = csv.writer(f, lineterminator='\n')
                    writer.writerow(columns)
                    for row in rows:
                        writer.writerow([format_value(v) for v in row])
                else:
                    json.dump({'meta': meta, 'columns': columns,
                               'rows': [[_json_value(v) for v in row] for row in rows]}, f, indent=1, sort_keys=True)
                    f.write('\n')
            os.replace(partial, path)
        finally:
            if partial.exists():
                partial.unlink()

    def __call__(self) -> Path:
        path = Path(self.run.output_path(self.command.name))
        columns, rows = self.compute()
        self.write(path, columns, rows, self.meta())
        _info(f'Wrote {len(rows)} rows to {path.absolute()}')
        return path
