import fairsynth as fs


def test_generate_and_fairness():
    spec = fs.generate("fig3")
    assert fs.diamond_violations(spec) == []
    assert fs.fairness_parameter(spec) == 4
    word, _state, process = fs.unfairness_witness(spec, 3)
    assert "".join(word) == "dbd"
    assert process == "p2"
    assert fs.unfairness_witness(spec, 4) is None


def test_foata_normal_form():
    spec = fs.generate("fig3")
    assert fs.foata_normal_form(spec, "abdcbdcb") == "{a}{b}{c,d}{b}{c,d}{b}"


def test_synthesize_run_and_compare():
    spec = fs.generate("fig1")
    aa = fs.synthesize(spec, k=3)
    enabled, accepted, label = fs.run_word(aa, "abc")
    assert enabled and accepted and label
    ok, cex = fs.equivalent(aa, spec)
    assert ok and cex == []
    sem = fs.semantics(aa)
    assert len(sem["dfa"]["states"]) >= 9
    assert "digraph" in fs.export_dot(aa)


def test_unfair_mode_restricts_to_fair_traces():
    spec = fs.generate("appendixG")
    aa = fs.synthesize(spec, k=1, mode="unfair")
    _, accepted, _ = fs.run_word(aa, ["c", "c"])
    assert accepted
    enabled, _, _ = fs.run_word(aa, ["a"])
    assert not enabled
    ok, _ = fs.equivalent(aa, spec)
    assert not ok  # only the 1-fair part of the language remains


def test_tree_of_bags():
    spec = fs.generate("fig1")
    arch = {
        "bags": {"P1": ["p1"], "P2": ["p2"]},
        "outer": {"P1": "p1", "P2": "p2"},
        "parent": {"P2": "P1"},
    }
    assert fs.bag_fairness(spec, arch) == {"P1": 1, "P2": 1}
    aa = fs.synthesize_tree(spec, arch)
    ok, _ = fs.equivalent(aa, spec)
    assert ok
