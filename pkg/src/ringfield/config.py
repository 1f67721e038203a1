"""Run configuration: a flat, human-editable key = value format.

Every field of ``RunConfig`` is one line; ``#`` starts a comment.
Serialising and re-parsing returns an equal config (floats are written
in shortest round-trip form).  Command-line flags override file values.

Defaults are the headline configuration: 801 sites, unit spacing,
tau = 1e-3, 1000 steps, observables recorded every 10 steps, drifting
gaussian initial state.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from .evolve import EvolutionConfig
from .ioutil import atomic_write_text, fmt
from .lattice import Lattice, make_even_lattice, make_lattice
from .state import StateSpec


@dataclass(frozen=True)
class RunConfig:
    n_sites: int = 801
    lattice_constant: float = 1.0
    shape: str = "gaussian"
    center: int = 0
    width: float = 10.0
    velocity_index: int = 20
    seed: int = 0
    scheme: str = "euler"
    euler_method: str = "spectral"
    tau: float = 1e-3
    n_steps: int = 1000
    record_every: int = 10
    parity_mode: str = "odd_standard"
    csv_path: str = ""
    json_path: str = ""
    checkpoint_every: int = 0
    checkpoint_dir: str = ""

    def lattice(self) -> Lattice:
        if self.parity_mode == "even_naive":
            if self.n_sites % 2 != 0:
                raise ValueError("parity_mode even_naive requires an even n_sites")
            return make_even_lattice(self.n_sites, self.lattice_constant)
        if self.n_sites % 2 == 0:
            raise ValueError(
                "even n_sites is rejected by the standard model; "
                "pass parity_mode = even_naive to run the demonstration mode"
            )
        return make_lattice(self.n_sites, self.lattice_constant)

    def state_spec(self) -> StateSpec:
        return StateSpec(
            shape=self.shape,
            center=self.center,
            width=self.width,
            velocity_index=self.velocity_index,
            seed=self.seed,
        )

    def evolution(self) -> EvolutionConfig:
        return EvolutionConfig(
            tau=self.tau,
            scheme=self.scheme,
            parity_mode=self.parity_mode,
            euler_method=self.euler_method,
        )

    def to_text(self) -> str:
        lines = []
        for spec in fields(self):
            value = getattr(self, spec.name)
            text = fmt(value) if spec.type == "float" else str(value)
            lines.append(f"{spec.name} = {text}")
        return "\n".join(lines) + "\n"

    def write(self, path: str) -> None:
        atomic_write_text(path, self.to_text())


def parse_config_text(text: str, base: RunConfig | None = None) -> RunConfig:
    """Parse the flat format, starting from ``base`` (or the defaults)."""
    values = {}
    known = {spec.name: spec for spec in fields(RunConfig)}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in known:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        kind = known[key].type
        try:
            if kind == "int":
                values[key] = int(value)
            elif kind == "float":
                values[key] = float(value)
            else:
                values[key] = value
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad value for {key}: {value!r}") from exc
    merged = {**(base or RunConfig()).__dict__, **values}
    return RunConfig(**merged)


def read_config(path: str, base: RunConfig | None = None) -> RunConfig:
    with open(path) as handle:
        return parse_config_text(handle.read(), base=base)
