"""Random test data shared by several test modules."""

from fractions import Fraction

from seifertkit.groups import coset_action, disjoint_union


def cyclic_subgroups(Q):
    out = []
    for g in Q:
        H, x = {0}, g
        while x != 0:
            H.add(x)
            x = Q.mul(x, g)
        if sorted(H) not in out:
            out.append(sorted(H))
    return out


def random_q_set(Q, rng, max_points=6):
    """A disjoint union of coset actions Q/H with H cyclic, at most ``max_points`` points."""
    subs = [H for H in cyclic_subgroups(Q) if Q.order // len(H) <= max_points]
    parts, total = [], 0
    while True:
        fits = [H for H in subs if total + Q.order // len(H) <= max_points]
        if not fits or (parts and rng.random() < 0.4):
            break
        H = rng.choice(fits)
        parts.append(coset_action(Q, H))
        total += Q.order // len(H)
    return disjoint_union(*parts)


def random_rational(rng, k, num=9, den=5):
    return tuple(Fraction(rng.randint(-num, num), rng.randint(1, den)) for _ in range(k))
