"""Built-in example documents written out by ``endopres demo``."""

LYSENOK_LPRES = """\
# First Grigorchuk group: Lysenok's L-presentation.
[lpres]
gens = a b c d
fixed = a^2; b^2; c^2; d^2; b*c*d
seeds = (a*d)^4; (a*d*a*c*a*c)^4
endo sigma = a -> a*c*a, b -> d, c -> b, d -> c
"""

# BS(1,2) x BS(1,2).  The kernel of t, u -> 1 is generated by a, b and t*u^-1.
BS_SQUARE_PRES = """\
[group]
gens = a b t u
deg = t:1 u:1
rels = [a,b]; [a,u]; [t,b]; [t,u]
rels = a^t*a^-2; b^u*b^-2
"""

# Window words for the normalized generators a, b and u_t = u*t^-1.
# In the group a@i = a^(2^i), b@i = b and u_t@i = u_t, and conjugating
# a@-2 by u_t moves it one level down.
BS_SQUARE_CERTS = """\
[certs]
N = 2
up a = a@2^2
down a = u_t@0^-1*a@-2*u_t@0
up b = b@2
down b = b@-2
up u_t = u_t@2
down u_t = u_t@-2
"""

# Hand-simplified three-generator form with z = t*u^-1.
BS_SQUARE_LPRES = """\
[lpres]
gens = a b z
seeds = [a,b]; a^z*a^-2; (b^2)^z*b^-1
endo eta = a -> a^2, b -> b, z -> z
endo tau = a -> z*a*z^-1, b -> b, z -> z
"""

BS_SQUARE_MAP = """\
# Reads both the hand form (a, b, z) and derived window words (x@i) in
# a, b, t, u; evaluated with the built-in BS(1,2)^2 affine images.
[map]
target = a b t u
via = t
a = a
b = b
z = t*u^-1
u_t = u*t^-1
"""

Z2_PRES = """\
[group]
gens = a t
deg = t:1
rels = [a,t]
"""

Z2_CERTS = """\
[certs]
N = 1
up a = a@1
down a = a@-1
"""

# Z^2 acting by translations on two dyadic lines.
Z2_MAP = """\
[map]
target = a t
via = t
[affine]
a = (0, 1); (0, 0)
t = (0, 0); (0, 1)
"""

BS12_PRES = """\
# BS(1,2): the kernel Z[1/2] of t -> 1 is not finitely generated.
[group]
gens = a t
deg = t:1
rels = a^t*a^-2
"""

DEMOS = {
    "lysenok": (
        {"lysenok.lpres": LYSENOK_LPRES},
        [
            "endopres expand lysenok.lpres --depth 3",
            "endopres verify lysenok.lpres --oracle grigorchuk --depth 6",
        ],
    ),
    "remark3": (
        {
            "remark3.pres": BS_SQUARE_PRES,
            "remark3.certs": BS_SQUARE_CERTS,
            "remark3.lpres": BS_SQUARE_LPRES,
            "remark3.map": BS_SQUARE_MAP,
        },
        [
            "endopres derive remark3.pres --t t --certs remark3.certs --out remark3-derived.lpres",
            "endopres verify remark3-derived.lpres --oracle dyadic --depth 5 --pullback remark3.map",
            "endopres verify remark3.lpres --oracle dyadic --depth 8 --pullback remark3.map",
            "endopres hnn remark3.lpres",
        ],
    ),
    "z2": (
        {"z2.pres": Z2_PRES, "z2.certs": Z2_CERTS, "z2.map": Z2_MAP},
        [
            "endopres derive z2.pres --t t --certs z2.certs --out z2.lpres",
            "endopres expand z2.lpres --depth 2",
            "endopres verify z2.lpres --oracle dyadic --depth 4 --pullback z2.map",
        ],
    ),
    "bs12": (
        {"bs12.pres": BS12_PRES},
        ["endopres derive bs12.pres --t t   # fails: no certificates exist"],
    ),
}
