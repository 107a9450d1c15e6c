"""Smoke test for the superquiver extension module.

Build and install first:

    cd crates/py && maturin build --release -o dist && pip install dist/*.whl
"""

import superquiver as sq


def main():
    loop = sq.Quiver(["v"], [("e", "v", "v")])
    assert loop.closed_paths(3) == [["e"], ["e", "e"], ["e", "e", "e"]]
    assert loop.ringel([(1, 1)], [(1, 1)]) == -2

    space = sq.RepSpace(loop, [(1, 1)])
    s2 = space.strace(["e", "e"])
    assert space.is_invariant(s2)
    assert space.oracle([2], compare_max_len=2).endswith("PASS")
    assert space.semi_invariant_dim([2]) == 2

    x = space.parse("x[e,1,1]")
    assert not space.is_invariant(x)
    assert (x * x - x * x).is_zero()
    odd = space.parse("x[e,1,2]")
    assert (odd * odd).is_zero()

    kron = sq.Quiver(["a", "b"], [("e1", "a", "b"), ("e2", "a", "b")])
    kspace = sq.RepSpace(kron, [(2, 0), (2, 0)])
    d = kspace.det("e1")
    assert kspace.has_weight(d, [-1, 1])
    assert kspace.weight(d) == [-1, 1]

    rep = "sdim a 1|0\nsdim b 1|0\nmap e1 = [1]\nmap e2 = [0]\n"
    assert sq.hom_ext(kron, rep, rep) == (1, 1)

    lines, code = sq.run_job("vertex v sdim 1|1\nedge e v -> v\nstraces maxlen 3\n")
    assert code == 0 and sum(l.startswith("str(") for l in lines) == 3

    try:
        sq.Quiver(["a"], [("e", "a", "nowhere")])
    except ValueError:
        pass
    else:
        raise AssertionError("unknown vertex accepted")

    print("smoke OK")


if __name__ == "__main__":
    main()
