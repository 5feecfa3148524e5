"""Frozen reference values for the numeric tests.

Computed once with mpmath at 50 significant digits, independently of the
package code (direct series/quadrature definitions), then pasted here.
Tolerance convention for comparisons: |got - ref| <= 1e-8*|ref| + 1e-12;
the absolute floor covers refs that sit below double-precision quadrature
resolution.
"""

LOGGAMMA_REF = [
    ((0.5, 0.0), (0.57236494292470009 + 0.0j)),
    ((1.0, 0.0), (0.0 + 0.0j)),
    ((2.5, 0.0), (0.28468287047291916 + 0.0j)),
    ((5.8, 0.0), (4.4499391938150901 + 0.0j)),
    ((12.4, 0.0), (18.486245533168055 + 0.0j)),
    ((34.5, 0.0), (86.813970941781074 + 0.0j)),
    ((0.5, 0.7), (-0.18673093264122111 - 0.88188042574632464j)),
    ((1.3, 6.0), (-7.0709880742524489 + 5.9608507788450252j)),
    ((2.9, 35.0), (-45.524300649988953 + 93.126056946145044j)),
    ((5.8, -65.0), (-79.052760920014531 - 214.44519175006719j)),
    ((6.2, 130.0), (-175.53782630040437 + 511.60841599110349j)),
    ((8.0, 260.0), (-365.78195895360586 + 1197.4501985582077j)),
    ((-0.3, 0.0), (1.4648400508576025 - 3.1415926535897932j)),
    ((-4.6, 0.0), (-2.9250017817625109 - 15.707963267948966j)),
    ((-9.6, 0.0), (-12.976511577561532 - 31.415926535897932j)),
    ((-24.7, 0.0), (-55.677088666345012 - 78.539816339744831j)),
    ((-0.3, 0.7), (0.00043479454955227200 - 2.5829792655957708j)),
    ((-4.6, 12.0), (-30.748250215201585 + 8.7574833786632370j)),
    ((-9.6, 35.0), (-90.104438724807658 + 72.135532952155430j)),
    ((-11.6, 130.0), (-262.19914701931722 + 483.21085565104400j)),
    ((-24.7, 260.0), (-547.65661259618377 + 1144.9739895329722j)),
    ((0.4, -50.0), (-78.012078506972870 - 145.44480398824093j)),
    ((-0.6, 50.0), (-81.924173507217513 + 143.86200823739627j)),
]

GFACTOR_REF = [
    ((0, 2.5, 3.0), (0.24405479590886420 - 0.084889591485135465j)),
    ((0, -8.6, 1.5), (-12.500519123775114 - 30.590732240885172j)),
    ((1, -4.5, 10.0), (-0.039883550720646046 + 0.070230698064676894j)),
    ((1, 0.4, -35.0), (0.58336619546988845 + 0.60743403792470215j)),
    ((0, 12.4, 60.0), (-191412973176.92959 - 457094621747.33669j)),
    ((1, -9.6, 130.0), (-1.7700243553467038e-14 + 4.7682914342591194e-14j)),
]

# tags: (form family, parity row, Gaussian width)
MELLIN_OF_F_REF = [
    ("sym2-even-X3-s0.5", (0.5 + 0.0j), (8147.8097306918779 + 0.0j)),
    ("sym2-even-X3-complex", (0.4 + 7.3j), (49962.940059545157 - 14025.926022366989j)),
    ("sym2-odd-X3-complex", (0.4 + 2.1j), (-4859.6220120436940 + 8343.7191008232938j)),
    ("gl2-even-X4-complex", (0.4 + 1.7j), (-48.883690466606315 - 39.538769559289564j)),
]

# (tag, y as an exact fraction string, F(y))
TRANSFORM_REF = [
    ("sym2-even-X3", "1/8", (16393.022912408786 + 0.0j)),
    ("sym2-even-X3", "1/2", (-40714.918889349086 + 0.0j)),
    ("sym2-even-X3", "1", (45671.518843578551 + 0.0j)),
    ("sym2-even-X3", "27/10", (-8788.3218103258914 + 0.0j)),
    ("sym2-even-X3", "8", (546.80318198015462 + 0.0j)),
    ("sym2-odd-X3", "1/8", (0.0 + 2298.5596196289969j)),
    ("sym2-odd-X3", "4/5", (0.0 + 12171.920418565460j)),
    ("sym2-odd-X3", "2", (0.0 + 5737.5516097923144j)),
    ("sym2-odd-X3", "23/4", (0.0 + 77.348790291729610j)),
    ("gl2-even-X4", "1/9", (7.9136185201392618 + 0.0j)),
    ("gl2-even-X4", "3/10", (79.768249617214195 + 0.0j)),
    ("gl2-even-X4", "1", (-1.0111256831651279 + 0.0j)),
    ("gl2-even-X4", "25/4", (1.4785307884413239e-11 + 0.0j)),
    ("gl2-even-X4", "16", (6.1534121442823923e-26 + 0.0j)),
    ("gl2-odd-X4", "2/9", (300.33711679516585 + 0.0j)),
    ("gl2-odd-X4", "1", (-4.5473290345536153 + 0.0j)),
    ("gl2-odd-X4", "31/9", (-1.0141312064931763e-5 + 0.0j)),
    ("gl2-odd-X4", "12", (-3.4869831614727771e-19 + 0.0j)),
    ("sym2-even-X6", "1/2", (187070541.18329774 + 0.0j)),
    ("sym2-even-X6", "3", (3014826.0250528352 + 0.0j)),
    ("sym2-even-X6", "12", (-3122.0994207257598 + 0.0j)),
    ("sym2-odd-X6", "1/3", (0.0 + 10549618.329700329j)),
    ("sym2-odd-X6", "5", (0.0 + 63544.909552655255j)),
    ("sym2-odd-X6", "21", (0.0 + 0.75275745807151557j)),
]

# ((a, b, q), value) for the two-level chain d=(1,1), c=(1,1)
HYPERKLOOSTERMAN_N4_REF = [
    ((1, 1, 6), (0.50000000000000000 - 2.5980762113533159j)),
    ((2, 3, 9), (4.0091470651382935e-51 + 1.0022867662845734e-50j)),
    ((1, 5, 12), (-10.392304845413264 - 2.0000000000000000j)),
]


def close(got, ref, rel=1e-8, floor=1e-12):
    return abs(got - ref) <= rel * abs(ref) + floor
