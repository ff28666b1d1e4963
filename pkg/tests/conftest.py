def pytest_terminal_summary(terminalreporter):
    from test_acceptance import _RESULTS

    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS, key=str):
        r = _RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {r.status:<14} {r.title}: {r.claim}")
