"""Pure-Python kernel for nested polylogarithm sums at z = 1/2."""


def nested_sum_half(parts, n_terms, bits):
    """Fixed-point value of ``Li_parts(1/2)`` truncated after ``n_terms`` terms.

    Returns an integer approximating ``2**bits`` times
    ``sum_{0<m_1<...<m_r<=n_terms} 2**-m_r / (m_1**k_1 ... m_r**k_r)``.
    Every division rounds toward minus infinity, so the result matches the
    compiled kernel bit for bit.
    """
    parts = tuple(parts)
    r = len(parts)
    if r == 0:
        return 1 << bits
    inner = [0] * r
    inner[0] = 1 << bits  # empty product at level 0
    top = parts[-1]
    total = 0
    for m in range(1, n_terms + 1):
        # top level uses inner[r-1] as it stood at m-1
        total += inner[r - 1] // ((m ** top) << m)
        for j in range(r - 1, 0, -1):
            inner[j] += inner[j - 1] // m ** parts[j - 1]
    return total
