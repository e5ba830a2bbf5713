"""The sample corpus shipped with the package.

Every instance is regenerated deterministically by :func:`corpus_instances`;
the files under ``posetlab/corpus`` are the same posets in the text format
and the test suite checks that they have not drifted.
"""

from __future__ import annotations

import random
from importlib import resources
from pathlib import Path

from .formats import format_poset, parse_poset
from .generators import gen_kelly, gen_pht, gen_standard_example, gen_subdivided_standard
from .poset import Poset, random_poset

RANDOM_SEED = 2024
NUM_RANDOM = 20


def corpus_instances() -> dict[str, Poset]:
    out: dict[str, Poset] = {}
    for m in range(2, 6):
        out[f"standard_{m}"] = gen_standard_example(m)[0]
    for m in (3, 4):
        out[f"kelly_{m}"] = gen_kelly(m)[0]
    for m in range(2, 5):
        for r in (1, 2):
            out[f"subdiv_{m}_{r}"] = gen_subdivided_standard(m, r)[0]
    for h in range(1, 4):
        for t in range(1, 5 - h):
            out[f"pht_{h}_{t}"] = gen_pht(h, t)[0]
    rng = random.Random(RANDOM_SEED)
    for i in range(NUM_RANDOM):
        n = rng.randint(4, 12)
        out[f"random_{i:02d}"] = random_poset(n, rng.randint(2, 4), rng.uniform(0.2, 0.6), rng)
    return out


def corpus_dir() -> Path:
    return Path(str(resources.files("posetlab") / "corpus"))


def write_corpus(directory: Path | str | None = None) -> list[Path]:
    directory = Path(directory) if directory is not None else corpus_dir()
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, P in corpus_instances().items():
        path = directory / f"{name}.poset"
        path.write_text(format_poset(P, comment=name))
        paths.append(path)
    return paths


def load_corpus(directory: Path | str | None = None) -> dict[str, Poset]:
    directory = Path(directory) if directory is not None else corpus_dir()
    return {p.stem: parse_poset(p.read_text()) for p in sorted(directory.glob("*.poset"))}
