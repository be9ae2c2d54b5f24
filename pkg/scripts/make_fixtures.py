"""Regenerate src/dynpoly/fixtures from the transcribed printed polynomials.

Only the ``printed`` strings below are hand-entered; ``expected`` is their
expansion.  Nothing here runs the dynatomic machinery.
"""

import json
from pathlib import Path

from dynpoly.mpoly import sort_roster, to_json
from dynpoly.parse import parse_poly

OUT = Path(__file__).resolve().parent.parent / "src" / "dynpoly" / "fixtures"

WORKED = "-x^2+y^2, x*y"
PSI_MAP = "x^2-2*x*y, -2*x*y+y^2"
F_AUT = "y, x"
G_AUT = "x-y, x"

Q4 = "(x^4+y*x^3-9*y^2*x^2+y^3*x+y^4)"
S6 = "(x^6-6*y*x^5-6*y^2*x^4+29*y^3*x^3-6*y^4*x^2-6*y^5*x+y^6)"
C1 = "(x^3-3*y*x^2+y^3)"
C2 = "(x^3-3*y^2*x+y^3)"
QG = "(x^2-y*x+y^2)"
DEG18_A = (
    "(x^18-18*y*x^17-54*y^2*x^16+1167*y^3*x^15-2466*y^4*x^14-7344*y^5*x^13"
    "+31065*y^6*x^12-20619*y^7*x^11-54513*y^8*x^10+99326*y^9*x^9"
    "-34119*y^10*x^8-47844*y^11*x^7+51072*y^12*x^6-16155*y^13*x^5"
    "-621*y^14*x^4+1329*y^15*x^3-207*y^16*x^2+y^18)"
)
DEG18_B = (
    "(x^18-207*y^2*x^16+1329*y^3*x^15-621*y^4*x^14-16155*y^5*x^13"
    "+51072*y^6*x^12-47844*y^7*x^11-34119*y^8*x^10+99326*y^9*x^9"
    "-54513*y^10*x^8-20619*y^11*x^7+31065*y^12*x^6-7344*y^13*x^5"
    "-2466*y^14*x^4+1167*y^15*x^3-54*y^16*x^2-18*y^17*x+y^18)"
)
C9_21_63_TAIL = "(z^12-z^11+z^9-z^8+z^6-z^4+z^3-z+1)*(z^36-z^33+z^27-z^24+z^18-z^12+z^9-z^3+1)"

FIXTURES = [
    # worked example, period-2 point at infinity
    dict(id="worked-iterate-F2", group="worked", kind="iterate_F", map=WORKED, N=2,
         label="worked example: second iterate, first coordinate",
         printed="-(x^2+x*y-y^2)*(x^2-x*y-y^2)"),
    dict(id="worked-iterate-G2", group="worked", kind="iterate_G", map=WORKED, N=2,
         label="worked example: second iterate, second coordinate",
         printed="-x*y*(x+y)*(x-y)"),
    dict(id="worked-phi-star-1", group="worked", kind="phi_star", map=WORKED, N=1,
         label="worked example: fixed-point polynomial", printed="-y*(2*x^2-y^2)"),
    dict(id="worked-phi-star-2", group="worked", kind="phi_star", map=WORKED, N=2,
         label="worked example: infinity as a double root", printed="-y^2"),
    # map with automorphisms of order 2 and 3
    dict(id="psiegs-phi-star-2", group="psiegs", kind="phi_star", map=PSI_MAP, N=2,
         label="order-2/order-3 automorphism example: Phi*_2", printed="-x^2+y*x-y^2"),
    dict(id="psiegs-phi-star-3", group="psiegs", kind="phi_star", map=PSI_MAP, N=3,
         label="order-2/order-3 automorphism example: Phi*_3", printed=f"3*{C1}*{C2}"),
    dict(id="psiegs-phi-star-4", group="psiegs", kind="phi_star", map=PSI_MAP, N=4,
         label="order-2/order-3 automorphism example: Phi*_4",
         printed=f"(-5*x^4+10*y*x^3-5*y^3*x+y^4)*{Q4}*(-x^4+5*y*x^3-10*y^3*x+5*y^4)"),
    dict(id="psiegs-phi-star-6", group="psiegs", kind="phi_star", map=PSI_MAP, N=6,
         label="order-2/order-3 automorphism example: Phi*_6 with two degree-18 factors",
         printed=("(7*x^6-21*y*x^5+35*y^3*x^3-21*y^4*x^2+y^6)"
                  "*(x^6-21*y^2*x^4+35*y^3*x^3-21*y^5*x+7*y^6)"
                  f"*{S6}*{DEG18_A}*{DEG18_B}")),
]

for N, psi_t, star_t, tilde_t in (
    (1, f"(x-y)*{QG}", f"(x-y)*{QG}", QG),
    (2, f"(x-y)*{Q4}", f"(x-y)*{Q4}", Q4),
    (3, f"(x-y)*{QG}*{S6}", S6, S6),
):
    for kind, text in (("psi", psi_t), ("psi_star", star_t), ("psi_tilde", tilde_t)):
        FIXTURES.append(dict(
            id=f"psiegs-f-{kind.replace('_', '-')}-{N}", group="psiegs", kind=kind,
            map=PSI_MAP, aut=F_AUT, N=N, printed=text,
            label=f"order-2 automorphism [y:x]: {kind} at N={N}"))

for N, psi_t, star_t, tilde_t in (
    (1, f"-{C1}*{C2}", f"-{C1}*{C2}", f"-{C1}*{C2}"),
    (2, f"-{QG}^2*{C1}*{C2}", f"{QG}^2", "1"),
):
    for kind, text in (("psi", psi_t), ("psi_star", star_t), ("psi_tilde", tilde_t)):
        FIXTURES.append(dict(
            id=f"psiegs-g-{kind.replace('_', '-')}-{N}", group="psiegs", kind=kind,
            map=PSI_MAP, aut=G_AUT, N=N, printed=text,
            label=f"order-3 automorphism [x-y:x]: {kind} at N={N}"))

Z2 = {
    1: "z*(z-1)",
    2: "z^2+z+1",
    3: "z^6+z^5+z^4+z^3+z^2+z+1",
    4: "(z^4+z^3+z^2+z+1)*(z^8-z^7+z^5-z^4+z^3-z+1)",
    # verbatim, including the absent z^9 term
    5: ("z^30+z^29+z^28+z^27+z^26+z^25+z^24+z^23+z^22+z^21+z^20"
        "+z^19+z^18+z^17+z^16+z^15+z^14+z^13+z^12+z^11+z^10"
        "+z^8+z^7+z^6+z^5+z^4+z^3+z^2+z+1"),
    6: f"(z^6+z^3+1)*{C9_21_63_TAIL}",
}
RECIP = {
    1: "(1-z)*(z^2+z+1)",
    2: "-z",
    3: "z^6+z^3+1",
    4: "(z^4+z^3+z^2+z+1)*(z^8-z^7+z^5-z^4+z^3-z+1)",
    5: ("(z^10+z^9+z^8+z^7+z^6+z^5+z^4+z^3+z^2+z+1)"
        "*(z^20-z^19+z^17-z^16+z^14-z^13+z^11-z^10+z^9-z^7+z^6-z^4+z^3-z+1)"),
    6: f"(z^6+z^5+z^4+z^3+z^2+z+1)*{C9_21_63_TAIL}",
}
for N, text in Z2.items():
    FIXTURES.append(dict(id=f"power-z2-phi-star-{N}", group="power-z2", kind="phi_star_z",
                         map="z^2", N=N, printed=text, label=f"z^2 table: Phi*_{N}"))
for N, text in RECIP.items():
    FIXTURES.append(dict(id=f"power-recip-phi-star-{N}", group="power-recip", kind="phi_star_z",
                         map="1/z^2", N=N, printed=text, label=f"1/z^2 table: Phi*_{N}"))

FIXTURES.append(dict(id="family-milnor-ab-phi-star-1", group="family", kind="family_phi_star",
                     family="milnor_ab", N=1, printed="x*y*(x*(1-b)+y*(1-a))",
                     label="normal form [x^2+axy : bxy+y^2]: fixed-point polynomial"))


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for fx in FIXTURES:
        p = parse_poly(fx["printed"])
        base = ("z",) if fx["kind"] == "phi_star_z" else ("x", "y")
        p = p.with_roster(sort_roster(base + p.used_vars()))
        fx = dict(fx, compare="exact", expected=to_json(p))
        (OUT / f"{fx['id']}.json").write_text(json.dumps(fx, indent=2) + "\n")
    print(f"wrote {len(FIXTURES)} fixtures to {OUT}")


if __name__ == "__main__":
    main()
