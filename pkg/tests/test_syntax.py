from hypothesis import given
from hypothesis import strategies as st

from mcube import interval as iv
from mcube import syntax as s
from mcube.interval import IVar


def terms(max_leaves=15):
    """Arbitrary (not necessarily well-typed) terms over small free variables."""
    ivals = st.one_of(st.just(iv.IZero()), st.just(iv.IOne()),
                      st.integers(0, 3).map(IVar),
                      st.integers(0, 3).map(lambda k: iv.INeg(IVar(k))),
                      st.tuples(st.integers(0, 3), st.integers(0, 3))
                      .map(lambda p: iv.IMeet(IVar(p[0]), IVar(p[1]))))
    leaves = st.one_of(st.integers(0, 4).map(s.Var), st.just(s.BoolT()), st.just(s.BTrue()),
                       st.just(s.Tt()), st.just(s.Ref("f")))
    faces = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 1)), max_size=2) \
        .filter(s.face_consistent).map(s.make_face)

    def extend(sub):
        return st.one_of(
            sub.map(lambda b: s.Lam(b, "x")),
            st.tuples(sub, sub).map(lambda p: s.App(*p)),
            st.tuples(sub, sub).map(lambda p: s.Pi(*p, "x")),
            st.tuples(sub, sub).map(lambda p: s.Pair(*p)),
            sub.map(s.Fst),
            sub.map(lambda b: s.PLam(b, "i")),
            st.tuples(sub, ivals).map(lambda p: s.PApp(*p)),
            st.tuples(sub, ivals, sub).map(lambda p: s.Transp(p[0], p[1], p[2], "i")),
            st.tuples(sub, faces, sub, sub).map(
                lambda p: s.HComp(p[0], (s.Branch(p[1], p[2], "k"),), p[3])),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)


T = terms()


@given(T, st.integers(0, 3), st.integers(0, 3))
def test_shift_round_trip(t, a, b):
    assert s.shift(s.shift(t, a, b), -a, -b) == t


@given(T)
def test_shift_moves_free_variables(t):
    assert s.free_term_vars(s.shift(t, 2, 0)) == {k + 2 for k in s.free_term_vars(t)}
    assert s.free_interval_vars(s.shift(t, 0, 1)) == \
        {k + 1 for k in s.free_interval_vars(t)}


@given(T)
def test_substituting_a_variable_for_itself(t):
    assert s.subst_term(t, 0, s.Var(0)) == t


@given(T, T)
def test_substituting_an_absent_variable(t, r):
    fresh = max(s.free_term_vars(t), default=-1) + 1
    assert s.subst_term(t, fresh, r) == t


@given(T)
def test_open_inverts_shift(t):
    assert s.open_term(s.shift(t, 1, 0), s.Tt()) == t
    assert s.open_interval(s.shift(t, 0, 1), iv.IOne()) == t


def test_open_term_substitutes_under_binders():
    body = s.Lam(s.App(s.Var(1), s.Var(0)), "y")
    assert s.open_term(body, s.Var(5)) == s.Lam(s.App(s.Var(6), s.Var(0)), "y")


def test_binder_names_do_not_affect_equality():
    assert s.Lam(s.Var(0), "x") == s.Lam(s.Var(0), "y")
    assert s.PLam(s.BTrue(), "i") == s.PLam(s.BTrue(), "j")


# -- systems under interval substitution ------------------------------------

def _hcomp_on(face):
    return s.HComp(s.BoolT(), (s.Branch(face, s.BTrue(), "k"),), s.BTrue())


def test_face_constant_substitution():
    t = _hcomp_on(((0, 0),))
    assert s.open_interval(t, iv.IOne()).system == ()
    assert s.open_interval(t, iv.IZero()).system[0].face == ()


def test_face_under_meet_splits_into_faces():
    # (i = 0) with i := j /\ m holds when j = 0 or m = 0
    t = _hcomp_on(((0, 0),))
    out = s.instantiate(t, [], [iv.IMeet(IVar(0), IVar(1))])
    assert {br.face for br in out.system} == {((0, 0),), ((1, 0),)}


def test_face_under_join_conjoins():
    t = _hcomp_on(((0, 0),))
    out = s.instantiate(t, [], [iv.IJoin(IVar(0), IVar(1))])
    assert [br.face for br in out.system] == [((0, 0), (1, 0))]


def test_face_under_negation_flips():
    t = _hcomp_on(((0, 1),))
    out = s.instantiate(t, [], [iv.INeg(IVar(2))])
    assert [br.face for br in out.system] == [((2, 0),)]


def test_inconsistent_faces_are_dropped():
    # (i = 1 /\ j = 0) with i, j := m, m cannot hold
    t = _hcomp_on(((0, 0), (1, 1)))
    out = s.instantiate(t, [], [IVar(0), IVar(0)])
    assert out.system == ()


# -- analyses ---------------------------------------------------------------

def test_kan_count_and_size():
    t = s.Transp(s.BoolT(), iv.IZero(), _hcomp_on(()), "i")
    assert s.kan_count(t) == (1, 1)
    assert s.kan_count(s.Lam(s.Var(0))) == (0, 0)
    assert s.size(s.App(s.Var(0), s.Var(1))) == 3


def test_refs():
    t = s.App(s.Ref("f"), s.Lam(s.App(s.Ref("g"), s.Var(0))))
    assert s.refs(t) == {"f", "g"}


def test_convenience_formers_are_non_dependent():
    p = s.arrow(s.BoolT(), s.BoolT())
    assert p.dom == p.cod == s.BoolT()
    q = s.path(s.BoolT(), s.BTrue(), s.BFalse())
    assert 0 not in s.free_interval_vars(q.line)
