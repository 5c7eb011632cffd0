from functools import lru_cache

from cosetlab.enumerator import enumerate_cosets, to_permutation_rep
from cosetlab.presentation import builtin_presentation, parse_word


@lru_cache(maxsize=None)
def fp_image(key, subgroup=()):
    """Permutation image of a builtin presentation on the cosets of ``<subgroup>``."""
    p = builtin_presentation(key)
    r = enumerate_cosets(p, [parse_word(w, p) for w in subgroup])
    assert r.completed
    return to_permutation_rep(r.table)


ACCEPTANCE: dict[int, str] = {}


def record_criterion(n: int, ok: bool, detail: str) -> None:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE[n] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
