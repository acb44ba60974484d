import inspect
from dataclasses import dataclass, fields

from omegaconf import MISSING, DictConfig, OmegaConf

from src.utility.logger import get_logger_func

_warn, _info, _debug = get_logger_func('config')


@dataclass
class Config:
    """Base of typed configuration records.

    Subclasses are plain dataclasses; `build` fills them from a mapping (usually a Hydra node)
    and `check` is called afterwards for subclass-specific validation."""

    @classmethod
    def build(cls, env, ignore_unknown=False, allow_missing=None):
        if isinstance(env, cls):
            return (env, {}) if ignore_unknown else env
        if isinstance(env, DictConfig):
            env = OmegaConf.to_container(env, resolve=True)
        if not isinstance(env, dict):
            raise TypeError(f'Can not build {cls.__name__} from {type(env)}')

        params = inspect.signature(cls).parameters
        matched = {k: v for k, v in env.items() if k in params}
        unmatched = {k: v for k, v in env.items() if k not in params}
        if unmatched and not ignore_unknown:
            raise ValueError(f'Unrecognized cfg for {cls.__name__}: {unmatched}')
        cfg = cls(**matched)

        allow_missing = allow_missing or set()
        for f in fields(cfg):
            if not f.name.startswith('_') and f.name not in allow_missing:
                assert getattr(cfg, f.name) is not MISSING, f'{f.name} is MISSING.'
        cfg.check()

        if ignore_unknown:
            return cfg, unmatched
        return cfg

    def check(self):
        pass

    def to_dict(self):
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def __getitem__(self, item):
        return getattr(self, item)
