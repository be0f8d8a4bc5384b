from hypothesis import settings

settings.register_profile("thorough", max_examples=1000, deadline=None)
settings.register_profile("default", deadline=None)
settings.load_profile("default")

PROPERTY = settings(max_examples=1000, deadline=None)


def naive_mul(a, b, n):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return out


# acceptance bookkeeping: one line per criterion in the terminal summary
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, title, elapsed, limit, detail = ACCEPTANCE[key]
        lim = f" (limit {limit:g} s)" if limit else ""
        extra = f" - {detail}" if detail else ""
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key}. {title}: {elapsed:.2f} s{lim}{extra}")
