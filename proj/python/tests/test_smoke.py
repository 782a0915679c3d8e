import autstr


def test_node_enumeration():
    want = ["", "l", "r", "ll", "lr", "rl", "rr"]
    assert [autstr.node_unindex(i) for i in range(7)] == want
    assert [autstr.node_index(a) for a in want] == list(range(7))


def test_buchi_membership_and_emptiness():
    fin = autstr.build("fin")
    assert autstr.buchi_member(fin, "1 1|0")
    assert not autstr.buchi_member(fin, "|1")
    witness = autstr.buchi_empty(fin)
    assert witness is not None
    assert autstr.buchi_member(fin, witness)


def test_tree_membership():
    positive = autstr.build("T")
    negative = autstr.build("T_I")
    antichain = autstr.build("antichain")
    chain = autstr.build("chain_2")
    assert autstr.tree_member(positive, antichain)
    assert not autstr.tree_member(negative, antichain)
    assert autstr.tree_member(negative, chain)
    infinite, _width = autstr.antichain_classify(antichain)
    assert infinite


def test_decide_and_validate_toy():
    assert autstr.decide("toy", "exists x. r1(x)")
    assert not autstr.decide("toy", "forall x. r1(x)")
    report = autstr.validate("toy", seed=1, samples=50)
    assert "result: pass" in report


def test_errors_are_typed():
    try:
        autstr.build("no_such_builder")
    except autstr.InputError:
        pass
    else:
        raise AssertionError("expected InputError")
