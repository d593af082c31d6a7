"""Independent class-number oracle for imaginary quadratic fields.

Dirichlet's finite class number formula: for a fundamental discriminant
D < -4,

    h(D) = (1 / (2 - chi(2))) * | sum_{0 < a < |D|/2} chi(a) |

where chi = kronecker(D, .).  Everything here is built on sympy's Jacobi
symbol so that it shares no code with the package under test.
"""

from sympy import jacobi_symbol


def kronecker(D: int, n: int) -> int:
    if n == 0:
        return 1 if D in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -result
    while n % 2 == 0:
        n //= 2
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    return result * jacobi_symbol(D % n, n)


def class_number_imaginary(D: int) -> int:
    assert D < -4 and D % 4 in (0, 1)
    total = sum(kronecker(D, a) for a in range(1, (-D + 1) // 2))
    return abs(total) // (2 - kronecker(D, 2))
