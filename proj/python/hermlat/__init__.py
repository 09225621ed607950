import json

from ._hermlat import HermlatError, artin, exists, hilbert, run_cli
from . import _hermlat


def genera(p, n, ring="ok"):
    return json.loads(_hermlat.genera_json(p, n, ring))


def sigma(p, n):
    return json.loads(_hermlat.sigma_json(p, n))


def glue(p, n, ring="ok", index=1):
    return json.loads(_hermlat.glue_json(p, n, ring, index))


__all__ = ["HermlatError", "artin", "exists", "genera", "glue", "hilbert", "run_cli", "sigma"]
