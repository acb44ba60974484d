from easydict import EasyDict
from hydra.utils import HydraConfig
from omegaconf import OmegaConf

__version__ = '0.3.0'

g_cfg = EasyDict({
    'rel_tol': 1e-12,
    'max_subdivisions': 200,
    # closed-form b's are used while (1 + c/eps)^(l/2) stays below this
    'closed_form_condition': 1e4,
    'shift_base': 'nonint',
    'n_jobs': 1,
})  # global configuration obj


# >>> setup OmegaConf

def path_guard(x: str):
    x = x.split(',')
    x.sort()
    x = '_'.join(x)
    x = x.replace('/', '-')
    x = x.replace('=', '-')
    return x[:240]


def name_guard(fallback):
    try:
        return HydraConfig.get().job.override_dirname
    except ValueError as v:
        if 'HydraConfig was not set' in str(v):
            return fallback
        raise v


def _register(name, fn):
    if not OmegaConf.has_resolver(name):
        OmegaConf.register_new_resolver(name, fn)


_register('path_guard', path_guard)
_register('name_guard', name_guard)
