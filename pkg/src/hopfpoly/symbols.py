"""Named elements of the coefficient field.

``qh`` and ``th`` are the square roots of q and t.
"""
from .exactalg import RatFun

qh = RatFun.symbol("qh")
th = RatFun.symbol("th")
q = qh ** 2
t = th ** 2
Q = RatFun.symbol("Q")
c = RatFun.symbol("c")
w = RatFun.symbol("w")
p = RatFun.symbol("p")
qtilde = RatFun.symbol("qtilde")
one = RatFun.coerce(1)
zero = RatFun.coerce(0)


def var(name: str) -> RatFun:
    return RatFun.symbol(name)
