"""JSON file format for bipartite states, pure vectors and Hamiltonians.

Schema: {"dims": [ds, de], "kind": "density" | "purevector" | "hermitian",
"data": [[re, im], ...]} with entries row-major. Serialization is
canonical (sorted keys, fixed separators, shortest float repr), so
parse -> serialize -> parse is the identity byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from . import linalg
from .states import BipartiteState, pure_state

KINDS = ("density", "purevector", "hermitian")


class StateFileError(ValueError):
    """Malformed or inconsistent state/Hamiltonian file."""


@dataclass(frozen=True)
class StateFile:
    ds: int
    de: int
    kind: str
    data: np.ndarray  # (dim, dim) matrix, or (dim,) vector for purevector

    @property
    def dim(self) -> int:
        return self.ds * self.de


def from_bipartite(rho: BipartiteState) -> StateFile:
    return StateFile(ds=rho.ds, de=rho.de, kind="density", data=rho.matrix)


def from_vector(chi, ds: int, de: int) -> StateFile:
    vec = np.asarray(chi, dtype=complex).reshape(-1)
    if vec.size != ds * de:
        raise StateFileError(f"vector length {vec.size} does not match dims ({ds}, {de})")
    return StateFile(ds=ds, de=de, kind="purevector", data=vec)


def from_hermitian(h, ds: int, de: int) -> StateFile:
    mat = linalg.as_complex_matrix(h)
    if mat.shape != (ds * de, ds * de):
        raise StateFileError(f"matrix shape {mat.shape} does not match dims ({ds}, {de})")
    return StateFile(ds=ds, de=de, kind="hermitian", data=mat)


def to_bipartite(sf: StateFile) -> BipartiteState:
    """Materialize a density or purevector file as a BipartiteState."""
    try:
        if sf.kind == "density":
            return BipartiteState(ds=sf.ds, de=sf.de, matrix=sf.data)
        if sf.kind == "purevector":
            return pure_state(sf.data, sf.ds, sf.de)
    except ValueError as exc:
        raise StateFileError(f"invalid state payload: {exc}") from exc
    raise StateFileError(f"kind {sf.kind!r} is not a state")


def to_hamiltonian(sf: StateFile) -> np.ndarray:
    if sf.kind != "hermitian":
        raise StateFileError(f"kind {sf.kind!r} is not a Hamiltonian")
    try:
        return linalg.require_hermitian(sf.data, name="hamiltonian")
    except ValueError as exc:
        raise StateFileError(f"invalid Hamiltonian payload: {exc}") from exc


def dumps(sf: StateFile) -> str:
    """Canonical JSON text for a state file (trailing newline included)."""
    flat = np.asarray(sf.data, dtype=complex).reshape(-1)
    payload = {
        "dims": [int(sf.ds), int(sf.de)],
        "kind": sf.kind,
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> StateFile:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise StateFileError("top-level JSON value must be an object")
    for key in ("dims", "kind", "data"):
        if key not in payload:
            raise StateFileError(f"missing required key {key!r}")

    dims = payload["dims"]
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(type(d) is int and d >= 1 for d in dims)
    ):
        raise StateFileError(f"dims must be two positive integers, got {dims!r}")
    ds, de = dims

    kind = payload["kind"]
    if kind not in KINDS:
        raise StateFileError(f"kind must be one of {KINDS}, got {kind!r}")

    raw = payload["data"]
    if not isinstance(raw, list) or not all(
        isinstance(z, list) and len(z) == 2 for z in raw
    ):
        raise StateFileError("data must be a list of [re, im] pairs")
    try:
        flat = np.array([complex(float(z[0]), float(z[1])) for z in raw])
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"non-numeric entry in data: {exc}") from exc

    dim = ds * de
    if kind == "purevector":
        if flat.size != dim:
            raise StateFileError(
                f"purevector needs {dim} entries for dims {dims}, got {flat.size}"
            )
        data = flat
    else:
        if flat.size != dim * dim:
            raise StateFileError(
                f"{kind} needs {dim * dim} entries for dims {dims}, got {flat.size}"
            )
        data = flat.reshape(dim, dim)
    if not np.isfinite(data).all():
        raise StateFileError("data contains non-finite entries")
    return StateFile(ds=ds, de=de, kind=kind, data=data)


def save(path, sf: StateFile) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(sf))


def load(path) -> StateFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise StateFileError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def load_state(path) -> BipartiteState:
    return to_bipartite(load(path))


def load_hamiltonian(path) -> np.ndarray:
    return to_hamiltonian(load(path))
