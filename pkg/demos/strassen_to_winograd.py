"""From Strassen's seven terms to the Winograd variant by sandwiching.

A triple of invertible matrices acts on a rank-one decomposition term by
term without changing the trilinear form it computes.  Applying one
particular triple to Strassen's decomposition lands exactly on the
lambda-parameterized Winograd variant.
"""

from fractions import Fraction

import mmtensor as mm

s = mm.strassen()
print("Strassen:", mm.decomposition_length(s), "terms,",
      "verifies:", mm.is_matmul_tensor(s))
print("type:", mm.format_type(mm.tensor_type(s)))
print()

for lam in (1, 2, Fraction(5, 7)):
    g = mm.winograd_isotropy(lam)
    w = mm.act(g, s)
    assert mm.is_matmul_tensor(w)
    # the type multiset is invariant under the action
    assert mm.tensor_type(w) == mm.tensor_type(s)
    print(f"lambda = {lam}: still verifies, same type")

print()
print("Winograd variant at lambda = 2, as a trilinear form:")
print(mm.print_trilinear(mm.winograd(2)))
