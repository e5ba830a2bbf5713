from posetlab.formats import format_poset
from posetlab.samples import corpus_dir, corpus_instances, load_corpus, write_corpus


def test_shipped_corpus_matches_regeneration():
    fresh = corpus_instances()
    shipped = load_corpus()
    assert set(shipped) == set(fresh)
    for name, P in fresh.items():
        assert shipped[name] == P
        assert (corpus_dir() / f"{name}.poset").read_text() == format_poset(P, comment=name)


def test_corpus_contents():
    names = set(corpus_instances())
    assert {f"standard_{m}" for m in range(2, 6)} <= names
    assert {"kelly_3", "kelly_4"} <= names
    assert {f"subdiv_{m}_{r}" for m in range(2, 5) for r in (1, 2)} <= names
    assert {f"pht_{h}_{t}" for h in range(1, 4) for t in range(1, 4) if h + t <= 4} <= names
    assert sum(n.startswith("random_") for n in names) == 20


def test_write_corpus(tmp_path):
    paths = write_corpus(tmp_path)
    assert len(paths) == len(corpus_instances())
    assert load_corpus(tmp_path) == corpus_instances()
