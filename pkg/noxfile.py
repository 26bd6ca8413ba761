import nox_poetry as nox


@nox.session
def tests(session: nox.Session) -> None:
    session.install(".", "pytest", "hypothesis")
    session.run("pytest", *session.posargs)


@nox.session
def bench(session: nox.Session) -> None:
    session.install(".")
    corpus = session.create_tmp()
    for rows, cols in [(5, 5), (8, 8), (10, 10), (16, 16), (20, 25)]:
        session.run(
            "equicolor",
            "gen",
            "--family",
            "grid_diag",
            "--rows",
            str(rows),
            "--cols",
            str(cols),
            "--out",
            f"{corpus}/grid{rows}x{cols}.el",
        )
    session.run("equicolor", "bench", "--corpus", corpus, "--r", "13", "--jobs", "2", "--out", f"{corpus}/report.json")


@nox.session
def black(session: nox.Session) -> None:
    session.install("black")
    session.run("black", "equicolor", "tests")


@nox.session
def isort(session: nox.Session) -> None:
    session.install("isort")
    session.run("isort", "equicolor", "tests")


@nox.session(name="black-check")
def black_check(session: nox.Session) -> None:
    session.install("black")
    session.run("black", "--check", "equicolor", "tests")


@nox.session(name="isort-check")
def isort_check(session: nox.Session) -> None:
    session.install("isort")
    session.run("isort", "--check-only", "equicolor", "tests")


@nox.session(name="flake8")
def flake8(session: nox.Session) -> None:
    session.install("flake8")
    session.run("flake8", "equicolor")
