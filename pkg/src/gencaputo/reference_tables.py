"""Published error tables, N = 16, 32, 64, 128, 256.

Keys are ``(alpha, rho)``; values list ``(error, order)`` with ``order``
``None`` on the first row.
"""

from __future__ import annotations

import math

NS = (16, 32, 64, 128, 256)

RHO_PI6 = math.pi / 6
RHO_5LN2_4 = 5 * math.log(2) / 4


def _cell(errors, orders):
    return list(zip(errors, (None,) + tuple(orders)))


TABLE1 = {
    (0.9, 0.9): _cell((2.7511e-02, 1.2854e-02, 6.0082e-03, 2.8073e-03, 1.3111e-03), (1.0978, 1.0972, 1.0977, 1.0984)),
    (0.5, 0.9): _cell((7.6009e-03, 2.7918e-03, 1.0129e-03, 3.6449e-04, 1.3044e-04), (1.4450, 1.4627, 1.4745, 1.4825)),
    (0.2, 0.9): _cell((1.5803e-03, 4.8924e-04, 1.4926e-04, 4.5042e-05, 1.3478e-05), (1.6916, 1.7127, 1.7285, 1.7407)),
    (0.9, RHO_PI6): _cell((4.9318e-02, 2.2986e-02, 1.0738e-02, 5.0183e-03, 2.3444e-03), (1.1014, 1.0980, 1.0975, 1.0980)),
    (0.5, RHO_PI6): _cell((1.6160e-02, 6.0450e-03, 2.2211e-03, 8.0617e-04, 2.9019e-04), (1.4186, 1.4445, 1.4621, 1.4741)),
    (0.2, RHO_PI6): _cell((4.1353e-03, 1.3189e-03, 4.1094e-04, 1.2594e-04, 3.8134e-05), (1.6487, 1.6824, 1.7061, 1.7236)),
    (0.9, 1 / 3): _cell((8.0872e-02, 3.7523e-02, 1.7505e-02, 8.1788e-03, 3.8216e-03), (1.1079, 1.1000, 1.0978, 1.0977)),
    (0.5, 1 / 3): _cell((2.9986e-02, 1.1421e-02, 4.2509e-03, 1.5567e-03, 5.6377e-04), (1.3926, 1.4258, 1.4493, 1.4653)),
    (0.2, 1 / 3): _cell((8.7349e-03, 2.8685e-03, 9.1173e-04, 2.8340e-04, 8.6708e-05), (1.6065, 1.6536, 1.6858, 1.7086)),
}

_T2 = {
    0.9: _cell((7.5367e-04, 1.7804e-04, 4.1848e-05, 9.8052e-06, 2.2931e-06), (2.0817, 2.0890, 2.0935, 2.0962)),
    0.5: _cell((2.2310e-04, 4.2271e-05, 7.8387e-06, 1.4325e-06, 2.5919e-07), (2.3999, 2.4310, 2.4521, 2.4665)),
    0.2: _cell((5.5932e-05, 9.1469e-06, 1.4539e-06, 2.2639e-07, 3.4715e-08), (2.6123, 2.6534, 2.6830, 2.7051)),
}
# both rho blocks are printed with identical numbers
TABLE2 = {(alpha, rho): cell for rho in (RHO_5LN2_4, 1 / 6) for alpha, cell in _T2.items()}

TABLE3 = {
    (0.9, 0.9): _cell((5.5781e-03, 3.0903e-03, 1.6838e-03, 9.0993e-04, 4.8971e-04), (0.8520, 0.8761, 0.8879, 0.8938)),
    (0.75, 0.9): _cell((4.1575e-02, 2.5318e-02, 1.5203e-02, 9.0757e-03, 5.4047e-03), (0.7156, 0.7358, 0.7442, 0.7478)),
    (0.5, 0.9): _cell((8.3167e-01, 5.6434e-01, 3.8009e-01, 2.5805e-01, 1.7692e-01), (0.5595, 0.5702, 0.5587, 0.5446)),
    (0.9, 0.5): _cell((3.0849e-03, 1.6930e-03, 9.1820e-04, 4.9505e-04, 2.6611e-04), (0.8656, 0.8827, 0.8912, 0.8955)),
    (0.75, 0.5): _cell((2.3453e-02, 1.4196e-02, 8.5066e-03, 5.0750e-03, 3.0218e-03), (0.7243, 0.7388, 0.7452, 0.7480)),
    (0.5, 0.5): _cell((4.5055e-01, 3.0941e-01, 2.1189e-01, 1.4590e-01, 1.0109e-01), (0.5422, 0.5462, 0.5384, 0.5294)),
    (0.9, 0.05): _cell((3.2737e-04, 1.7664e-04, 9.4977e-05, 5.0982e-05, 2.7343e-05), (0.8901, 0.8951, 0.8976, 0.8988)),
    (0.75, 0.05): _cell((2.9506e-03, 1.7644e-03, 1.0519e-03, 6.2624e-04, 3.7257e-04), (0.7418, 0.7462, 0.7482, 0.7492)),
    (0.5, 0.05): _cell((6.3763e-02, 4.4834e-02, 3.1506e-02, 2.2159e-02, 1.5602e-02), (0.5081, 0.5089, 0.5077, 0.5061)),
}

TABLES = {1: TABLE1, 2: TABLE2, 3: TABLE3}
