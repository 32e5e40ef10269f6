"""Reader/writer for a RevLib-style ``.real`` dialect.

Grammar (lines are ``\n``-terminated, ``\r`` stripped, ``#`` starts a comment,
blank lines ignored)::

    .version <str>          optional
    .numvars N              required
    .variables n1 ... nN    required
    .constants <N x 0|1|->  optional, default all '-'
    .garbage   <N x 1|->    optional, default all '-'
    .begin
    <gate lines>
    .end

Gate lines: ``t<m> c1 .. c(m-1) t`` is an X gate with m-1 controls,
``f<m> c1 .. c(m-2) t1 t2`` a swap with m-2 controls, and ``h1 t`` a
Hadamard (dialect extension; classic .real has no Hadamard). A control token
prefixed with ``-`` is a negative control (dialect extension); targets may
not carry ``-``. Directives must appear in the order above, each at most
once. Other RevLib gate types (``p``, ``v``, ``v+``) are rejected: silently
mis-costing them would corrupt every downstream report.
"""
from __future__ import annotations

from .circuit import Circuit, Control, Gate, GateKind, Polarity, validate


class RealFormatError(ValueError):
    """Raised on any syntax or consistency error; carries the 1-based line number."""

    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(f"{where}{message}")


_DIRECTIVE_ORDER = [".version", ".numvars", ".variables", ".constants", ".garbage", ".begin"]


def _check_name(lineno: int, name: str) -> str:
    if not name or name.startswith("-") or "#" in name:
        raise RealFormatError(lineno, f"invalid line name {name!r}")
    return name


def parse(text: str | bytes) -> Circuit:
    """Parse dialect text into a validated Circuit."""
    if isinstance(text, bytes):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as e:
            raise RealFormatError(None, f"input is not ASCII: {e}") from None

    numvars: int | None = None
    names: list[str] = []
    constants: list = []
    garbage: list[bool] = []
    gates: list[Gate] = []
    index: dict[str, int] = {}
    seen: list[str] = []           # directives seen so far, in order
    in_body = False
    ended = False

    def directive_allowed(lineno: int, d: str) -> None:
        if d in seen:
            raise RealFormatError(lineno, f"duplicate directive {d}")
        pos = _DIRECTIVE_ORDER.index(d)
        for later in seen:
            if _DIRECTIVE_ORDER.index(later) > pos:
                raise RealFormatError(lineno, f"directive {d} must appear before {later}")
        seen.append(d)

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].replace("\r", "").strip()
        if not line:
            continue
        tokens = line.split()
        head = tokens[0]

        if ended:
            raise RealFormatError(lineno, f"content after .end: {line!r}")

        if head.startswith("."):
            if head == ".version":
                directive_allowed(lineno, head)
            elif head == ".numvars":
                directive_allowed(lineno, head)
                if len(tokens) != 2 or not tokens[1].isdigit():
                    raise RealFormatError(lineno, ".numvars expects one integer")
                numvars = int(tokens[1])
                if numvars < 1:
                    raise RealFormatError(lineno, ".numvars must be at least 1")
            elif head == ".variables":
                directive_allowed(lineno, head)
                if numvars is None:
                    raise RealFormatError(lineno, ".variables before .numvars")
                names = [_check_name(lineno, t) for t in tokens[1:]]
                if len(names) != numvars:
                    raise RealFormatError(lineno, f".variables lists {len(names)} names, .numvars says {numvars}")
                if len(set(names)) != len(names):
                    raise RealFormatError(lineno, "duplicate line name in .variables")
                index = {n: i for i, n in enumerate(names)}
            elif head == ".constants":
                directive_allowed(lineno, head)
                if numvars is None:
                    raise RealFormatError(lineno, ".constants before .numvars")
                if len(tokens) != 2 or len(tokens[1]) != numvars or set(tokens[1]) - set("01-"):
                    raise RealFormatError(lineno, f".constants expects {numvars} characters of 0/1/-")
                constants = [None if ch == "-" else int(ch) for ch in tokens[1]]
            elif head == ".garbage":
                directive_allowed(lineno, head)
                if numvars is None:
                    raise RealFormatError(lineno, ".garbage before .numvars")
                if len(tokens) != 2 or len(tokens[1]) != numvars or set(tokens[1]) - set("1-"):
                    raise RealFormatError(lineno, f".garbage expects {numvars} characters of 1/-")
                garbage = [ch == "1" for ch in tokens[1]]
            elif head == ".begin":
                directive_allowed(lineno, head)
                if numvars is None or not names:
                    raise RealFormatError(lineno, ".begin before .numvars/.variables")
                in_body = True
            elif head == ".end":
                if not in_body:
                    raise RealFormatError(lineno, ".end without .begin")
                ended = True
            else:
                raise RealFormatError(lineno, f"unknown directive {head}")
            continue

        if not in_body:
            raise RealFormatError(lineno, f"gate line before .begin: {line!r}")
        gates.append(_parse_gate(lineno, tokens, index))

    if numvars is None:
        raise RealFormatError(None, "missing .numvars")
    if not names:
        raise RealFormatError(None, "missing .variables")
    if not ended:
        raise RealFormatError(None, "missing .end")

    circuit = Circuit(
        line_count=numvars,
        line_names=tuple(names),
        constants=tuple(constants) if constants else (None,) * numvars,
        garbage=tuple(garbage) if garbage else (False,) * numvars,
        gates=tuple(gates),
    )
    violations = validate(circuit)
    if violations:
        raise RealFormatError(None, "; ".join(str(v) for v in violations))
    return circuit


def _parse_gate(lineno: int, tokens: list[str], index: dict[str, int]) -> Gate:
    mnemonic = tokens[0]
    kind_char = mnemonic[0]
    width_str = mnemonic[1:]
    if kind_char not in ("t", "f", "h") or not width_str.isdigit():
        raise RealFormatError(lineno, f"unknown gate mnemonic {mnemonic!r}")
    width = int(width_str)
    operands = tokens[1:]
    if len(operands) != width:
        raise RealFormatError(lineno, f"{mnemonic} expects {width} line names, got {len(operands)}")

    if kind_char == "t":
        if width < 1:
            raise RealFormatError(lineno, f"unknown gate mnemonic {mnemonic!r}")
        n_targets = 1
        kind = GateKind.X
    elif kind_char == "f":
        if width < 2:
            raise RealFormatError(lineno, f"unknown gate mnemonic {mnemonic!r}")
        n_targets = 2
        kind = GateKind.SWAP
    else:
        if width != 1:
            raise RealFormatError(lineno, f"unknown gate mnemonic {mnemonic!r}")
        n_targets = 1
        kind = GateKind.H

    def resolve(token: str, *, target: bool) -> tuple[int, Polarity]:
        polarity = Polarity.POSITIVE
        name = token
        if token.startswith("-"):
            if target:
                raise RealFormatError(lineno, f"negative-control marker on target {token!r}")
            polarity = Polarity.NEGATIVE
            name = token[1:]
        if name not in index:
            raise RealFormatError(lineno, f"unknown line name {name!r}")
        return index[name], polarity

    control_tokens = operands[: width - n_targets]
    target_tokens = operands[width - n_targets:]
    controls = tuple(Control(*resolve(t, target=False)) for t in control_tokens)
    targets = tuple(resolve(t, target=True)[0] for t in target_tokens)
    return Gate(kind, controls, targets)


def emit(circuit: Circuit) -> str:
    """Serialize a circuit; equal circuits produce byte-identical text.

    Directives are always written in full (constants/garbage included) so the
    output is self-describing; controls come before targets, ascending by
    line index, negative controls prefixed with ``-``.
    """
    violations = validate(circuit)
    if violations:
        raise ValueError("cannot emit invalid circuit: " + "; ".join(str(v) for v in violations))

    lines = [
        f".numvars {circuit.line_count}",
        ".variables " + " ".join(circuit.line_names),
        ".constants " + "".join("-" if c is None else str(c) for c in circuit.constants),
        ".garbage " + "".join("1" if g else "-" for g in circuit.garbage),
        ".begin",
    ]
    for g in circuit.gates:
        if g.kind is GateKind.H:
            mnemonic = "h1"
        elif g.kind is GateKind.X:
            mnemonic = f"t{len(g.controls) + 1}"
        else:
            mnemonic = f"f{len(g.controls) + 2}"
        tokens = [mnemonic]
        for c in g.controls:
            prefix = "-" if c.polarity is Polarity.NEGATIVE else ""
            tokens.append(prefix + circuit.line_names[c.line])
        for t in sorted(g.targets):
            tokens.append(circuit.line_names[t])
        lines.append(" ".join(tokens))
    lines.append(".end")
    return "\n".join(lines) + "\n"
