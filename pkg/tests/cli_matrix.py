"""The fixed CLI matrix: every fixture under every command, plus the eval,
example and error cases.  Run as a script it prints a transcript of the whole
matrix, which two separate processes must reproduce byte for byte."""
import contextlib
import io
import sys
from pathlib import Path

HERE = Path(__file__).parent
FIXTURES = HERE / "fixtures"

GOOD = ("kz2", "kz3", "kw2", "kw3", "h4", "h4-gauge", "field1")
MUTANT_FILES = ("mutant-noncocycle", "mutant-flipped-phi", "mutant-corrupted-comult",
                "mutant-twist-beta-eps")
COMMANDS = (["check"], ["check", "--level", "coalgebra"], ["check", "--level", "bialgebra"],
            ["integrals"], ["grouplike"], ["antipode"], ["verify-theorem"])


def _f(name):
    return str(FIXTURES / f"{name}.alg")


def _expected(stem, cmd):
    if stem in GOOD:
        return 0
    if stem == "bialgebra":
        # bialgebra-level checks pass; anything needing S, α, β is a usage error
        if cmd[0] == "check" and cmd[-1] in ("coalgebra", "bialgebra"):
            return 0
        return 1 if cmd[0] == "verify-theorem" else 2
    level = cmd[-1] if cmd[0] == "check" and len(cmd) == 3 else "hopf"
    passes = {
        "mutant-noncocycle": ("coalgebra",),
        "mutant-flipped-phi": ("coalgebra", "bialgebra"),
        "mutant-corrupted-comult": (),
        "mutant-twist-beta-eps": ("coalgebra", "bialgebra"),
    }[stem]
    return 0 if level in passes else 1


def matrix():
    """``(argv, expected exit status)`` pairs in a fixed order."""
    rows = []
    for stem in GOOD + MUTANT_FILES + ("bialgebra",):
        for cmd in COMMANDS:
            rows.append(([cmd[0], _f(stem), *cmd[1:]], _expected(stem, cmd)))
    rows += [
        (["eval", _f("kw2"), "--builtin", "e3"], 0),
        (["eval", _f("kw2"), "--builtin", "e6b"], 0),
        (["eval", _f("h4"), "--identity", "S(h1) alpha(h2) h3 = alpha(h1) 1"], 0),
        (["eval", _f("h4-gauge"), "--identity", "h1 beta(h2) S(h3) = beta(h1) 1"], 0),
        (["eval", _f("h4-gauge"), "--identity", "phi(h1, g1, f1) = phi(h1, f1, g1)"], 1),
        (["eval", _f("mutant-noncocycle"), "--builtin", "cocycle"], 1),
        (["eval", _f("kz2"), "--identity", "chi((h1 g1)) = chi(h1) chi(g1)",
          "--bind", str(FIXTURES / "chi.bind")], 0),
        (["eval", _f("kz2"), "--identity", "h1 h2 h3"], 2),
        (["eval", _f("kz2"), "--identity", "chi(h1) = eps(h1)"], 2),
        (["eval", _f("kz2"), "--builtin", "e9"], 2),
        (["example", "group", "--n", "1", "--field", "Q"], 0),
        (["example", "twist", "--n", "2", "--zeta", "-1", "--field", "Q"], 0),
        (["example", "twist", "--n", "3", "--zeta", "2", "--field", "Fp", "7"], 0),
        (["example", "h4", "--field", "Q"], 0),
        (["example", "h4", "--field", "Fp", "2"], 2),
        (["example", "twist", "--n", "3", "--zeta", "3", "--field", "Fp", "7"], 2),
        (["example", "group", "--n", "2", "--field", "Fp", "8"], 2),
        (["example", "mutant", "noncocycle"], 0),
        (["example", "mutant", "nonsense"], 2),
        (["check", str(FIXTURES / "missing.alg")], 2),
        (["--ceiling", "10", "verify-theorem", _f("h4")], 2),
    ]
    return rows


def run(argv):
    """Run one invocation in process; returns (status, stdout, stderr)."""
    from dqhopf.cli import main

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        try:
            status = main(argv)
        except SystemExit as exc:
            status = exc.code
    return status, out.getvalue(), err.getvalue()


def _shown(argv):
    # paths relative to the fixtures directory keep the transcript portable
    return " ".join(a.replace(str(FIXTURES) + "/", "") for a in argv)


def transcript():
    parts = []
    for argv, _ in matrix():
        status, out, err = run(argv)
        parts.append(f"$ dqhopf {_shown(argv)}\n[exit {status}]\n{out}{err}")
    return "".join(parts)


if __name__ == "__main__":
    sys.stdout.write(transcript())
