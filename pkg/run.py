from __future__ import annotations

import json
import logging
import os
import sys

import hydra
from hydra.errors import InstantiationException
from hydra.utils import HydraConfig
from omegaconf import DictConfig, OmegaConf, open_dict

import src
from src.command import RunConfig, build_system
from src.errors import QCEError
from src.pipeline import Pipeline
from src.utility.fn import instantiate_no_recursive, symlink_force
from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('main')

# nodes replaced wholesale by a config file instead of merged key by key
_WHOLE_NODES = ('command', 'system')
_GROUPS = ('command', 'system', 'exp')


def _fail(error: Exception, status: int):
    record = error.record() if isinstance(error, QCEError) else {'error': type(error).__name__, 'message': str(error)}
    print(json.dumps(record, sort_keys=True), file=sys.stderr)
    sys.exit(status)


def _is_value_override(override: str) -> bool:
    """Plain key=value overrides; group selections, deletions and hydra settings are not replayed."""
    key = override.split('=', 1)[0].lstrip('+')
    return not override.startswith('~') and '/' not in key and not key.startswith('hydra') \
        and key not in _GROUPS + ('config_file',)


def merge_config_file(cfg: DictConfig, path: str, overrides) -> DictConfig:
    """cfg updated from a JSON/YAML file, with the command-line value overrides applied on top."""
    loaded = OmegaConf.load(os.path.join(cfg.root, path) if not os.path.isabs(path) else path)
    with open_dict(cfg):
        for key, value in loaded.items():
            if key in _WHOLE_NODES:
                cfg[key] = value
            else:
                cfg[key] = OmegaConf.merge(cfg[key], value) if isinstance(cfg.get(key), DictConfig) else value
        values = [o.lstrip('+') for o in overrides if _is_value_override(o)]
        cfg.merge_with(OmegaConf.from_dotlist(values))
    return cfg


def resolved_config(cfg: DictConfig) -> dict:
    return {k: v for k, v in OmegaConf.to_container(cfg, resolve=True).items() if k != 'hydra'}


@hydra.main('config', 'config_run')
def run(cfg: DictConfig):
    logging.captureWarnings(True)
    _info(f'Working directory: {os.getcwd()}')
    outputs_root = os.path.join(cfg.root, 'outputs')
    if os.path.exists(outputs_root):
        symlink_force(os.getcwd(), os.path.join(outputs_root, '0_latest_run'))

    try:
        if cfg.config_file is not None:
            _info(f'Loading {cfg.config_file}')
            cfg = merge_config_file(cfg, cfg.config_file, HydraConfig.get().overrides.task)
        src.g_cfg = cfg
        run_cfg: RunConfig = RunConfig.build({k: v for k, v in resolved_config(cfg).items()
                                              if k not in ('command', 'system')}, ignore_unknown=True)[0]
        spec = build_system(cfg.system)
        command = instantiate_no_recursive(cfg.command)
    except InstantiationException as e:
        _fail(e.__cause__ if isinstance(e.__cause__, QCEError) else e, 2)
    except (QCEError, ValueError, KeyError, TypeError) as e:
        _fail(e, 2)

    if run_cfg.dump_config:
        dumped = resolved_config(cfg)
        dumped.update(config_file=None, dump_config=False)
        with open('run_config.json', 'w') as f:
            json.dump(dumped, f, indent=1, sort_keys=True)
            f.write('\n')

    try:
        Pipeline(command, run_cfg, spec, cfg.system, resolved_config(cfg))()
    except QCEError as e:
        _fail(e, 1)


if __name__ == '__main__':
    run()
