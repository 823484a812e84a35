"""The combination example: equality at one level but not at the next.

Prints the basis-count profile, the normalized values, the verdict at each
level and the four total-equality flags.
"""

from sylab.counting import ConstraintSpec, count_profile, sy_verdict_from_profile
from sylab.equality import build_combination_example, equality_criterion, total_equality_report
from sylab.textio import emit_matroid


def main(r: int = 3, t: int = 1) -> None:
    M, R = build_combination_example(r, t)
    print(emit_matroid(M))
    prof = count_profile(M, ConstraintSpec(R))
    for a in range(prof.r + 1):
        print(f"a={a}  B={prof.B(a)}  P={prof.P(a)}")
    for a in range(1, prof.r):
        v = sy_verdict_from_profile(prof, a)
        print(f"level {a}: {v.value}; criterion says {equality_criterion(M, R, a).to_json()}")
    rep = total_equality_report(M, R)
    print("flags", {f: getattr(rep, f) for f in ("i", "ii", "iii", "iv")})


if __name__ == "__main__":
    main()
