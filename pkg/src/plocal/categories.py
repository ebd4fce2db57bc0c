"""Finite categories with explicit composition tables.

Builders for the three categories attached to a group and a collection of
p-subgroups:

* transporter: one morphism P -> Q per group element g with P^g <= Q;
* linking: morphisms are left cosets O^p(C_G(P)) g of transporter elements;
* orbit: morphisms are cosets g Q of transporter elements.

Morphism witnesses are canonical (minimal) coset representatives and the
composite of g: P -> Q followed by h: Q -> R is the product g h, so all
composition tables are total on composable pairs and reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, NotCentric
from .groups import PermutationGroup, Subgroup, centralizer, p_residual, transporter_set
from .omega import IntersectionPoset, closure_in_poset, is_centric

DEFAULT_TABLE_BUDGET = 2_000_000


@dataclass(frozen=True)
class Morphism:
    src: int
    tgt: int
    witness: int | None = None   # element id in the ambient group; None if table-defined


class FiniteCategory:
    """Explicit objects, morphism lists per object pair, and a total composition table."""

    def __init__(self, kind: str, objects: list, group: PermutationGroup | None = None):
        self.kind = kind
        self.objects = list(objects)
        self.group = group
        self.morphisms: list[Morphism] = []
        self.mor_ids: dict[tuple[int, int], list[int]] = {}
        self.identity_ids: list[int] = [-1] * len(objects)
        self.compose_table: dict[tuple[int, int], int] = {}
        # kernels defining the coset quotient each morphism set lives in
        self.source_kernels: list[Subgroup] | None = None   # linking: K(P) acting on the left
        self.target_kernels: list[Subgroup] | None = None   # orbit: Q acting on the right
        self._by_witness: dict[tuple[int, int, int], int] = {}

    # -- construction ----------------------------------------------------

    def add_morphism(self, src: int, tgt: int, witness: int | None = None) -> int:
        tid = len(self.morphisms)
        self.morphisms.append(Morphism(src, tgt, witness))
        self.mor_ids.setdefault((src, tgt), []).append(tid)
        if witness is not None:
            self._by_witness[(src, tgt, witness)] = tid
        return tid

    def set_identity(self, obj: int, tid: int):
        self.identity_ids[obj] = tid

    def fill_composition(self, canonical_witness, table_budget: int = DEFAULT_TABLE_BUDGET):
        """Materialize the composition table from witness products.

        ``canonical_witness(src, raw_product)`` reduces a product to the
        canonical representative of its coset.
        """
        G = self.group
        pairs = 0
        for (a, b), lhs in self.mor_ids.items():
            for (b2, c), rhs in self.mor_ids.items():
                if b2 != b:
                    continue
                pairs += len(lhs) * len(rhs)
                if pairs > table_budget:
                    raise BudgetExceeded(2, pairs, table_budget)
                for t1 in lhs:
                    w1 = self.morphisms[t1].witness
                    for t2 in rhs:
                        w2 = self.morphisms[t2].witness
                        w = canonical_witness(a, c, G.mult(w1, w2))
                        self.compose_table[(t1, t2)] = self._by_witness[(a, c, w)]

    # -- queries -----------------------------------------------------------

    def mor(self, i: int, j: int) -> list[int]:
        return self.mor_ids.get((i, j), [])

    def token_by_witness(self, i: int, j: int, witness: int) -> int:
        return self._by_witness[(i, j, witness)]

    def compose(self, t1: int, t2: int) -> int:
        return self.compose_table[(t1, t2)]

    def is_identity(self, tid: int) -> bool:
        m = self.morphisms[tid]
        return self.identity_ids[m.src] == tid

    @property
    def object_count(self) -> int:
        return len(self.objects)

    @property
    def morphism_count(self) -> int:
        return len(self.morphisms)

    def object_label(self, i) -> str:
        obj = self.objects[i]
        if isinstance(obj, Subgroup):
            return obj.label()
        return str(obj)

    def nonidentity_by_source(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.objects]
        for tid, m in enumerate(self.morphisms):
            if not self.is_identity(tid):
                out[m.src].append(tid)
        return out

    def endomorphism_order(self, tid: int) -> int:
        """Order of an invertible endomorphism under category composition."""
        m = self.morphisms[tid]
        ident = self.identity_ids[m.src]
        k, cur = 1, tid
        while cur != ident:
            cur = self.compose(cur, tid)
            k += 1
            if k > len(self.mor(m.src, m.src)) + 1:
                raise ValueError("endomorphism is not invertible")
        return k

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        """Compact text dump: objects, tokens, and the full composition table."""
        lines = ["finite-category v1", f"kind {self.kind}", f"objects {len(self.objects)}"]
        for i in range(len(self.objects)):
            lines.append(f"object {i} {self.object_label(i)}")
        lines.append(f"tokens {len(self.morphisms)}")
        for tid, m in enumerate(self.morphisms):
            w = "-" if m.witness is None else str(m.witness)
            lines.append(f"token {tid} {m.src} {m.tgt} {w}")
        for i, tid in enumerate(self.identity_ids):
            lines.append(f"identity {i} {tid}")
        lines.append(f"composites {len(self.compose_table)}")
        for (t1, t2) in sorted(self.compose_table):
            lines.append(f"compose {t1} {t2} {self.compose_table[(t1, t2)]}")
        lines.append("end")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "FiniteCategory":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if lines[0] != "finite-category v1":
            raise ValueError("unrecognized category dump header")
        kind = lines[1].split(None, 1)[1]
        nobj = int(lines[2].split()[1])
        cat = cls(f"generic:{kind}", [f"obj{i}" for i in range(nobj)])
        for ln in lines[3:]:
            parts = ln.split()
            if parts[0] == "object":
                cat.objects[int(parts[1])] = " ".join(parts[2:])
            elif parts[0] == "token":
                tid, src, tgt = int(parts[1]), int(parts[2]), int(parts[3])
                w = None if parts[4] == "-" else int(parts[4])
                got = cat.add_morphism(src, tgt, w)
                assert got == tid
            elif parts[0] == "identity":
                cat.set_identity(int(parts[1]), int(parts[2]))
            elif parts[0] == "compose":
                cat.compose_table[(int(parts[1]), int(parts[2]))] = int(parts[3])
        return cat


# -- canonical coset representatives ---------------------------------------


def _min_left_coset(G: PermutationGroup, K: Subgroup, g: int) -> int:
    return min(G.mult(k, g) for k in K.ids)


def _min_right_coset(G: PermutationGroup, g: int, Q: Subgroup) -> int:
    return min(G.mult(g, q) for q in Q.ids)


# -- builders ---------------------------------------------------------------


def build_transporter(G: PermutationGroup, collection,
                      table_budget: int = DEFAULT_TABLE_BUDGET) -> FiniteCategory:
    """The transporter category: Mor(P, Q) = N_G(P, Q), one token per element."""
    cat = FiniteCategory("transporter", list(collection), G)
    for i, P in enumerate(cat.objects):
        for j, Q in enumerate(cat.objects):
            for g in transporter_set(G, P, Q):
                tid = cat.add_morphism(i, j, g)
                if i == j and g == 0:
                    cat.set_identity(i, tid)
    cat.fill_composition(lambda a, c, w: w, table_budget)
    return cat


def build_linking(G: PermutationGroup, p: int, centric_collection,
                  table_budget: int = DEFAULT_TABLE_BUDGET) -> FiniteCategory:
    """The linking category on p-centric objects: Mor(P, Q) = K(P)\\N_G(P, Q)
    with K(P) = O^p(C_G(P)); tokens are canonical left-coset representatives."""
    objs = list(centric_collection)
    kernels = []
    for P in objs:
        if not is_centric(G, p, P):
            raise NotCentric(f"{P.label()} is not {p}-centric")
        kernels.append(p_residual(centralizer(G, P), p))
    cat = FiniteCategory("linking", objs, G)
    cat.source_kernels = kernels
    for i, P in enumerate(objs):
        K = kernels[i]
        for j, Q in enumerate(objs):
            reps = sorted({_min_left_coset(G, K, g) for g in transporter_set(G, P, Q)})
            for w in reps:
                tid = cat.add_morphism(i, j, w)
                if i == j and w == 0:
                    cat.set_identity(i, tid)
    cat.fill_composition(
        lambda a, c, w: _min_left_coset(G, kernels[a], w), table_budget
    )
    return cat


def build_orbit(G: PermutationGroup, collection,
                table_budget: int = DEFAULT_TABLE_BUDGET) -> FiniteCategory:
    """The orbit category: Mor(P, Q) = N_G(P, Q)/Q as cosets gQ."""
    objs = list(collection)
    cat = FiniteCategory("orbit", objs, G)
    cat.target_kernels = objs
    for i, P in enumerate(objs):
        for j, Q in enumerate(objs):
            reps = sorted({_min_right_coset(G, g, Q) for g in transporter_set(G, P, Q)})
            for w in reps:
                tid = cat.add_morphism(i, j, w)
                if i == j and w == 0:
                    cat.set_identity(i, tid)
    cat.fill_composition(
        lambda a, c, w: _min_right_coset(G, w, objs[c]), table_budget
    )
    return cat


def coset_category(G: PermutationGroup, collection) -> FiniteCategory:
    """The thin category of cosets Pg for P in the collection, with exactly
    one morphism Pg -> Qh when P^g <= Q^h (independent of representatives).

    When the collection contains a common normal subgroup (the intersection
    of all Sylow subgroups, say), every coset of it is an initial object and
    the nerve is contractible.
    """
    objs: list[tuple[int, tuple[int, ...]]] = []
    for k, P in enumerate(collection):
        seen = set()
        for g in range(G.order):
            cs = tuple(sorted(G.mult(x, g) for x in P.ids))
            if cs not in seen:
                seen.add(cs)
                objs.append((k, cs))
    objs.sort()
    cat = FiniteCategory("coset", [f"{k}:{cs[0]}" for k, cs in objs], G)
    conj_cache = []
    for k, cs in objs:
        g = cs[0]
        P = collection[k]
        conj_cache.append(frozenset(G.conj(x, g) for x in P.ids))
    arrow = [[False] * len(objs) for _ in objs]
    for a in range(len(objs)):
        for b in range(len(objs)):
            if conj_cache[a] <= conj_cache[b]:
                arrow[a][b] = True
    tok: dict[tuple[int, int], int] = {}
    for a in range(len(objs)):
        for b in range(len(objs)):
            if arrow[a][b]:
                tid = cat.add_morphism(a, b)
                tok[(a, b)] = tid
                if a == b:
                    cat.set_identity(a, tid)
    for (a, b), t1 in tok.items():
        for (b2, c), t2 in tok.items():
            if b2 == b:
                cat.compose_table[(t1, t2)] = tok[(a, c)]
    return cat


# -- functors ---------------------------------------------------------------


@dataclass
class Functor:
    source: FiniteCategory
    target: FiniteCategory
    object_map: list[int]
    morphism_map: list[int]     # source token id -> target token id

    def apply(self, tid: int) -> int:
        return self.morphism_map[tid]

    def violations(self) -> list[str]:
        out = []
        for i, tid in enumerate(self.source.identity_ids):
            if self.morphism_map[tid] != self.target.identity_ids[self.object_map[i]]:
                out.append(f"identity at object {i} not preserved")
        for (t1, t2), t3 in self.source.compose_table.items():
            lhs = self.target.compose(self.morphism_map[t1], self.morphism_map[t2])
            if lhs != self.morphism_map[t3]:
                out.append(f"composition of tokens ({t1},{t2}) not preserved")
        for tid, m in enumerate(self.source.morphisms):
            img = self.target.morphisms[self.morphism_map[tid]]
            if img.src != self.object_map[m.src] or img.tgt != self.object_map[m.tgt]:
                out.append(f"token {tid} maps outside its object images")
        return out

    @property
    def is_functor(self) -> bool:
        return not self.violations()


def identity_functor(C: FiniteCategory) -> Functor:
    return Functor(C, C, list(range(C.object_count)), list(range(C.morphism_count)))


def full_subcategory(C: FiniteCategory, keep: list[int]) -> tuple[FiniteCategory, Functor]:
    """Full subcategory on the listed objects, with its inclusion functor."""
    sub = FiniteCategory(C.kind, [C.objects[i] for i in keep], C.group)
    old_of_new_obj = list(keep)
    new_obj = {o: i for i, o in enumerate(keep)}
    token_map: dict[int, int] = {}
    for tid, m in enumerate(C.morphisms):
        if m.src in new_obj and m.tgt in new_obj:
            nid = sub.add_morphism(new_obj[m.src], new_obj[m.tgt], m.witness)
            token_map[tid] = nid
            if C.is_identity(tid):
                sub.set_identity(new_obj[m.src], nid)
    for (t1, t2), t3 in C.compose_table.items():
        if t1 in token_map and t2 in token_map:
            sub.compose_table[(token_map[t1], token_map[t2])] = token_map[t3]
    if C.source_kernels is not None:
        sub.source_kernels = [C.source_kernels[i] for i in keep]
    if C.target_kernels is not None:
        sub.target_kernels = [C.target_kernels[i] for i in keep]
    inv = {v: k for k, v in token_map.items()}
    incl = Functor(
        sub, C, old_of_new_obj, [inv[t] for t in range(sub.morphism_count)]
    )
    return sub, incl


def quotient_projection(T: FiniteCategory, p: int,
                        table_budget: int = DEFAULT_TABLE_BUDGET) -> Functor:
    """The projection from a transporter category on centric objects to the
    linking category: identity on objects, witness g -> K(P) g."""
    G = T.group
    L = build_linking(G, p, T.objects, table_budget)
    mor_map = []
    for m in T.morphisms:
        K = L.source_kernels[m.src]
        w = _min_left_coset(G, K, m.witness)
        mor_map.append(L._by_witness[(m.src, m.tgt, w)])
    return Functor(T, L, list(range(T.object_count)), mor_map)


# -- isomorphism classes and skeleta ----------------------------------------


def iso_classes(C: FiniteCategory) -> tuple[list[int], list[list[int]]]:
    """Partition objects by categorical isomorphism."""
    n = C.object_count
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in range(n):
        for j in range(i + 1, n):
            iso = False
            for f in C.mor(i, j):
                for g in C.mor(j, i):
                    if (
                        C.compose(f, g) == C.identity_ids[i]
                        and C.compose(g, f) == C.identity_ids[j]
                    ):
                        iso = True
                        break
                if iso:
                    break
            if iso:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)
    class_of = [find(i) for i in range(n)]
    roots = sorted(set(class_of))
    renum = {r: k for k, r in enumerate(roots)}
    class_of = [renum[r] for r in class_of]
    classes = [[] for _ in roots]
    for i, c in enumerate(class_of):
        classes[c].append(i)
    return class_of, classes


def _object_key(C: FiniteCategory, i: int):
    obj = C.objects[i]
    if isinstance(obj, Subgroup):
        return obj.key
    return (i,)


def skeleton(C: FiniteCategory) -> tuple[FiniteCategory, Functor]:
    """Full subcategory on one canonical representative per isomorphism class."""
    _, classes = iso_classes(C)
    reps = sorted(
        (min(cls, key=lambda i: _object_key(C, i)) for cls in classes),
        key=lambda i: _object_key(C, i),
    )
    return full_subcategory(C, reps)


# -- exhaustive law checking -------------------------------------------------


@dataclass
class CategoryLawsVerdict:
    associative: bool
    identities: bool
    composition_closed: bool
    well_defined: bool
    triples_checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.associative
            and self.identities
            and self.composition_closed
            and self.well_defined
        )


def verify_category(C: FiniteCategory) -> CategoryLawsVerdict:
    failures = []
    identities = True
    for i in range(C.object_count):
        e = C.identity_ids[i]
        if e < 0:
            identities = False
            failures.append(f"object {i} has no identity")
            continue
        for (a, b), toks in C.mor_ids.items():
            for t in toks:
                if a == i and C.compose(e, t) != t:
                    identities = False
                    failures.append(f"left identity fails at token {t}")
                if b == i and C.compose(t, e) != t:
                    identities = False
                    failures.append(f"right identity fails at token {t}")

    closed = True
    for (t1, t2), t3 in C.compose_table.items():
        m1, m2, m3 = C.morphisms[t1], C.morphisms[t2], C.morphisms[t3]
        if m1.tgt != m2.src or m3.src != m1.src or m3.tgt != m2.tgt:
            closed = False
            failures.append(f"composite ({t1},{t2}) lands outside Mor({m1.src},{m2.tgt})")

    associative = True
    triples = 0
    by_source: dict[int, list[int]] = {}
    for tid, m in enumerate(C.morphisms):
        by_source.setdefault(m.src, []).append(tid)
    for t1, m1 in enumerate(C.morphisms):
        for t2 in by_source.get(m1.tgt, ()):
            t12 = C.compose(t1, t2)
            m2 = C.morphisms[t2]
            for t3 in by_source.get(m2.tgt, ()):
                triples += 1
                if C.compose(t12, t3) != C.compose(t1, C.compose(t2, t3)):
                    associative = False
                    failures.append(f"associativity fails at ({t1},{t2},{t3})")

    well_defined = _verify_coset_well_definedness(C, failures)
    return CategoryLawsVerdict(
        associative, identities, closed, well_defined, triples, failures
    )


def _verify_coset_well_definedness(C: FiniteCategory, failures: list[str]) -> bool:
    """Exhaustively check that coset composition is representative-independent."""
    G = C.group
    if G is None:
        return True
    ok = True
    if C.kind == "linking" and C.source_kernels is not None:
        kernels = C.source_kernels
        for t1, m1 in enumerate(C.morphisms):
            K_src = kernels[m1.src]
            K_mid = kernels[m1.tgt]
            for j in range(C.object_count):
                for t2 in C.mor(m1.tgt, j):
                    m2 = C.morphisms[t2]
                    expected = C.compose(t1, t2)
                    for sig in K_src.ids:
                        w = _min_left_coset(
                            G, K_src, G.mult(G.mult(sig, m1.witness), m2.witness)
                        )
                        if w != C.morphisms[expected].witness:
                            ok = False
                            failures.append(f"left-kernel shift breaks composite ({t1},{t2})")
                    for tau in K_mid.ids:
                        w = _min_left_coset(
                            G, K_src, G.mult(m1.witness, G.mult(tau, m2.witness))
                        )
                        if w != C.morphisms[expected].witness:
                            ok = False
                            failures.append(f"middle-kernel shift breaks composite ({t1},{t2})")
    if C.kind == "orbit" and C.target_kernels is not None:
        for t1, m1 in enumerate(C.morphisms):
            Q = C.target_kernels[m1.tgt]
            for j in range(C.object_count):
                for t2 in C.mor(m1.tgt, j):
                    m2 = C.morphisms[t2]
                    R = C.target_kernels[j]
                    expected = C.morphisms[C.compose(t1, t2)].witness
                    for q in Q.ids:
                        for r in R.ids:
                            w = _min_right_coset(
                                G,
                                G.mult(G.mult(m1.witness, q), G.mult(m2.witness, r)),
                                R,
                            )
                            if w != expected:
                                ok = False
                                failures.append(
                                    f"representative shift breaks composite ({t1},{t2})"
                                )
    return ok


# -- the quotient-functor conditions -----------------------------------------


@dataclass
class QuotientFunctorVerdict:
    iso_class_bijective: bool
    morphism_surjective: bool
    kernels_prime_to_p: bool
    fibers_are_kernel_orbits: bool
    kernel_orders: list[int]
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.iso_class_bijective
            and self.morphism_surjective
            and self.kernels_prime_to_p
            and self.fibers_are_kernel_orbits
        )


def automorphism_tokens(C: FiniteCategory, i: int) -> list[int]:
    out = []
    for t in C.mor(i, i):
        for s in C.mor(i, i):
            if C.compose(t, s) == C.identity_ids[i] and C.compose(s, t) == C.identity_ids[i]:
                out.append(t)
                break
    return out


def verify_quotient_functor(psi: Functor, p: int) -> QuotientFunctorVerdict:
    """Check the three conditions under which a surjective quotient of
    categories is transparent to mod-p homology: bijectivity on isomorphism
    classes plus morphism-set surjectivity, kernels of order prime to p, and
    fibers that are exactly right-translates by the kernel."""
    C, D = psi.source, psi.target
    failures: list[str] = []

    src_class_of, src_classes = iso_classes(C)
    tgt_class_of, tgt_classes = iso_classes(D)
    image_classes = [tgt_class_of[psi.object_map[cls[0]]] for cls in src_classes]
    injective = len(set(image_classes)) == len(image_classes)
    surjective_classes = set(image_classes) == set(range(len(tgt_classes)))
    for cls in src_classes:
        imgs = {tgt_class_of[psi.object_map[i]] for i in cls}
        if len(imgs) != 1:
            injective = False
            failures.append("isomorphic objects map to non-isomorphic objects")
    iso_bij = injective and surjective_classes
    if not iso_bij:
        failures.append("not bijective on isomorphism classes")

    mor_surj = True
    for i in range(C.object_count):
        for j in range(C.object_count):
            hit = {psi.apply(t) for t in C.mor(i, j)}
            want = set(D.mor(psi.object_map[i], psi.object_map[j]))
            if hit != want:
                mor_surj = False
                failures.append(f"morphism map not surjective on Mor({i},{j})")

    kernels: list[list[int]] = []
    kernels_ok = True
    for i in range(C.object_count):
        ident_img = D.identity_ids[psi.object_map[i]]
        K = [t for t in automorphism_tokens(C, i) if psi.apply(t) == ident_img]
        kernels.append(K)
        for t in K:
            if C.endomorphism_order(t) % p == 0:
                kernels_ok = False
                failures.append(f"kernel element at object {i} has order divisible by {p}")

    fibers_ok = True
    for i in range(C.object_count):
        K = kernels[i]
        for j in range(C.object_count):
            toks = C.mor(i, j)
            for f in toks:
                orbit = {C.compose(s, f) for s in K}
                fiber = {g for g in toks if psi.apply(g) == psi.apply(f)}
                if orbit != fiber:
                    fibers_ok = False
                    failures.append(f"fiber of token {f} is not a kernel orbit")
    return QuotientFunctorVerdict(
        iso_bij, mor_surj, kernels_ok, fibers_ok,
        [len(K) for K in kernels], failures,
    )


# -- the closure / inclusion adjunction ---------------------------------------


@dataclass
class AdjunctionVerdict:
    bijections: bool
    natural_in_source: bool
    natural_in_target: bool
    pairs_checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.bijections and self.natural_in_source and self.natural_in_target


def verify_closure_adjunction(
    G: PermutationGroup,
    p: int,
    poset: IntersectionPoset,
    test_subgroups: list[Subgroup],
    table_budget: int = DEFAULT_TABLE_BUDGET,
) -> AdjunctionVerdict:
    """Check that closure is left adjoint to inclusion between the orbit
    category on all p-subgroups and the one on intersection-poset members:
    the morphism sets Mor(P, Q) and Mor(P°, Q) coincide for closed Q, and the
    identification commutes with composition on both sides."""
    failures: list[str] = []
    members = poset.members
    collection: list[Subgroup] = []
    seen = set()
    for H in list(test_subgroups) + members:
        if H.ids not in seen:
            seen.add(H.ids)
            collection.append(H)
    collection.sort(key=lambda H: H.key)
    big = build_orbit(G, collection, table_budget)
    omega = build_orbit(G, members, table_budget)
    big_idx = {H.ids: i for i, H in enumerate(collection)}
    om_idx = {H.ids: i for i, H in enumerate(members)}
    clos = {P.ids: closure_in_poset(poset, P) for P in test_subgroups}

    def tokens_match(i_big, j_big, i_om, j_om):
        reps_big = sorted(big.morphisms[t].witness for t in big.mor(i_big, j_big))
        reps_om = sorted(omega.morphisms[t].witness for t in omega.mor(i_om, j_om))
        return reps_big == reps_om

    bijections = True
    pairs = 0
    for P in test_subgroups:
        Pc = clos[P.ids]
        for Q in members:
            pairs += 1
            if not tokens_match(
                big_idx[P.ids], big_idx[Q.ids], om_idx[Pc.ids], om_idx[Q.ids]
            ):
                bijections = False
                failures.append(
                    f"morphism sets differ for P={P.label()}, Q={Q.label()}"
                )

    # naturality in the target variable: postcomposition with any map of
    # closed subgroups commutes with the identification
    natural_tgt = True
    for P in test_subgroups:
        Pc = clos[P.ids]
        for Q in members:
            iP, iPc, iQ = big_idx[P.ids], om_idx[Pc.ids], om_idx[Q.ids]
            for phi in omega.mor(iPc, iQ):
                w_phi = omega.morphisms[phi].witness
                phi_big = big._by_witness.get((iP, big_idx[Q.ids], w_phi))
                if phi_big is None:
                    natural_tgt = False
                    failures.append("identification misses a morphism")
                    continue
                for jQ2, Q2 in enumerate(members):
                    for m in omega.mor(iQ, jQ2):
                        w_m = omega.morphisms[m].witness
                        m_big = big._by_witness[
                            (big_idx[Q.ids], big_idx[Q2.ids], w_m)
                        ]
                        lhs = omega.morphisms[omega.compose(phi, m)].witness
                        rhs = big.morphisms[big.compose(phi_big, m_big)].witness
                        if lhs != rhs:
                            natural_tgt = False
                            failures.append("postcomposition square fails")

    # naturality in the source variable: precomposition with a map P' -> P of
    # p-subgroups matches precomposition with its closure P'° -> P°
    natural_src = True
    for P2 in test_subgroups:
        for P in test_subgroups:
            iP2, iP = big_idx[P2.ids], big_idx[P.ids]
            P2c, Pc = clos[P2.ids], clos[P.ids]
            for u in big.mor(iP2, iP):
                w_u = big.morphisms[u].witness
                w_uc = _min_right_coset(G, w_u, Pc)
                uc = omega._by_witness.get((om_idx[P2c.ids], om_idx[Pc.ids], w_uc))
                if uc is None:
                    natural_src = False
                    failures.append("closure of a morphism is missing")
                    continue
                for Q in members:
                    iQ_big, iQ_om = big_idx[Q.ids], om_idx[Q.ids]
                    for phi in omega.mor(om_idx[Pc.ids], iQ_om):
                        w_phi = omega.morphisms[phi].witness
                        phi_big = big._by_witness.get((iP, iQ_big, w_phi))
                        if phi_big is None:
                            natural_src = False
                            failures.append("identification misses a morphism")
                            continue
                        lhs = big.morphisms[big.compose(u, phi_big)].witness
                        rhs = omega.morphisms[omega.compose(uc, phi)].witness
                        if lhs != rhs:
                            natural_src = False
                            failures.append("precomposition square fails")
    return AdjunctionVerdict(bijections, natural_src, natural_tgt, pairs, failures)
