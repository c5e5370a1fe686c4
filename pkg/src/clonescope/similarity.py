"""Line-based near-miss similarity between normalized fragments."""


def lcs_length(a, b) -> int:
    """Length of the longest common subsequence of two sequences.

    Iterative two-row DP; sequences are interned to ints first so the inner
    loop compares integers.
    """
    if not a or not b:
        return 0
    table = {}
    xs = [table.setdefault(x, len(table)) for x in a]
    ys = [table.setdefault(y, len(table)) for y in b]
    if len(xs) < len(ys):
        xs, ys = ys, xs
    prev = [0] * (len(ys) + 1)
    for x in xs:
        cur = [0]
        append = cur.append
        for j, y in enumerate(ys, start=1):
            if x == y:
                append(prev[j - 1] + 1)
            else:
                p, c = prev[j], cur[j - 1]
                append(p if p >= c else c)
        prev = cur
    return prev[-1]


def fragment_similarity(a, b) -> float:
    """|LCS(a.lines, b.lines)| / max(|a.lines|, |b.lines|).

    Symmetric, in [0, 1], and 1.0 exactly for identical line sequences.
    Both fragments must be normalized under the same renaming mode.
    """
    if a.renaming is not b.renaming:
        raise ValueError(
            f"renaming modes differ: {a.renaming.value} vs {b.renaming.value}"
        )
    longest = max(len(a.lines), len(b.lines))
    if longest == 0:
        return 1.0
    if a.lines == b.lines:
        return 1.0
    return lcs_length(a.lines, b.lines) / longest
