"""Ultrafilter algebra on finite carriers, computed by the defining formulas.

Every ultrafilter on a finite set is principal, so each operation could be
a one-line shortcut.  The point of the module is that it never takes it:
images, products, and tensors are located by their membership formulas and
then cross-checked subset-by-subset against the shortcut, turning the
algebraic identities into machine-checkable facts.
"""
from hjlab import (
    PrincipalUltrafilter,
    SubsetQuery,
    check_image_law,
    check_product_law,
    check_tensor_assoc,
    check_tensor_power_law,
    cyclic_semigroup,
    flag_semigroup,
    generate_corpus,
    image,
    member,
    sweep_tensor_power,
    uf_product,
    uf_tensor,
)

Z6 = cyclic_semigroup(6)
U = PrincipalUltrafilter(Z6, 4)
A = SubsetQuery.from_members(Z6, [0, 2, 4])
print(f"U = principal at 4 on Z/6; A = {A.members()}; A in U: {member(U, A)}")

# image under the reduction Z6 -> Z3
Z3 = cyclic_semigroup(3)
f = [x % 3 for x in range(6)]
fU = image(f, U, Z3)
print(f"f(U) for f = mod 3: principal at {fU.point}")
print(f"  image law over all 2^3 subsets: {check_image_law(f, U, Z3)}")

# product by the nested formula: A in U*V iff {s : s^-1 A in V} in U
V = PrincipalUltrafilter(Z6, 5)
UV = uf_product(U, V, Z6)
print(f"U*V on Z/6: principal at {UV.point} (4 + 5 = {(4 + 5) % 6})")
print(f"  product law over all 2^6 subsets: {check_product_law(Z6, U, V)}")

# tensor product lives on the product carrier
W = uf_tensor(fU, PrincipalUltrafilter(Z3, 2))
print(f"f(U) (x) 2: principal at flat index {W.point} on 3x3 cells")

ok, bad = check_tensor_assoc((2, 2, 4), (1, 0, 3))
print(f"tensor associativity, 16 cells exhaustive: {ok}")
ok, bad = check_tensor_assoc((3, 3, 3), (0, 1, 2), samples=50_000)
print(f"tensor associativity, 27 cells sampled:    {ok}")

# the headline identity: pushing V^(x)k through fold-then-retract equals
# the k-fold product of the pushed-forward V
S, view, family = flag_semigroup(2)
sigma = list(family)[1]
for k in (2, 3):
    results = [
        check_tensor_power_law(S, sigma.mapping, k, PrincipalUltrafilter(S, p))[0]
        for p in range(S.order)
    ]
    print(f"tensor-power identity on flags, k={k}: {sum(results)}/{len(results)} points")

# and across a seeded corpus of transformation semigroups
entries = generate_corpus(count=25, max_order=6, seed=0)
report = sweep_tensor_power(entries, ks=(2, 3))
print(
    f"corpus sweep: {report.semigroups} semigroups, {report.endomorphisms} "
    f"homomorphisms, {report.checks} checks, {len(report.failures)} failures"
)
