"""
Decomposition domain package.

L2-orthogonal splitting of symmetric two-tensors into a Lie-derivative
part, a pure-trace part and a transverse-traceless remainder.
"""
