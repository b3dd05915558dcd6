"""
Reader and writer for the SMILP v1 text format.

    SMILP 1
    sense max|min
    kind packing|covering|general
    vars <n>
    obj <c_1> ... <c_n>
    vartypes <s>                       # B, I or C per variable
    row <=|>=|= <rhs> : <j> <a_j> ...  # 1-based columns
    hull <j...> : <v...> | <v...>      # x|j in conv(points)
    colblocks <q> : <j...> | <j...>
    rowblocks <p> : <i...> | <i...>
"""

import logging
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence

from pydantic import ValidationError

from sparsecut.core.constants import (SMILP_HEADER, VARTYPE_BINARY,
                                      VARTYPE_CONTINUOUS, VARTYPE_INTEGER,
                                      Axis, KindTag, Relation, Sense, VarKind)
from sparsecut.core.errors import InstanceFormatError, PartitionMismatchError
from sparsecut.core.models import (BlockPartition, HullConstraint, Instance,
                                   Row)
from sparsecut.core.utils import format_rational, parse_rational
from sparsecut.core.validation import ensure_valid

logger = logging.getLogger(__name__)

_SENSES = {"max": Sense.MAXIMIZE, "min": Sense.MINIMIZE}
_RELATIONS = {"<=": Relation.LE, ">=": Relation.GE, "=": Relation.EQ}


class SmilpDocument(NamedTuple):
    instance: Instance
    col_partition: Optional[BlockPartition] = None
    row_partition: Optional[BlockPartition] = None

    @property
    def partitions(self) -> List[BlockPartition]:
        return [p for p in (self.col_partition, self.row_partition) if p is not None]

    def graph_partition(self, kind: Optional[KindTag] = None) -> BlockPartition:
        """Row blocks for covering instances, column blocks otherwise."""
        kind = KindTag(kind or self.instance.kind_tag)
        if kind == KindTag.COVERING:
            partition, keyword = self.row_partition, "rowblocks"
        else:
            partition, keyword = self.col_partition, "colblocks"
        if partition is None:
            raise PartitionMismatchError(
                f"a {kind.value} instance needs a {keyword} line"
            )
        return partition


def _index(token: str, limit: int, line: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise InstanceFormatError(f"{what} index {token!r} is not an integer", line)
    if not 1 <= value <= limit:
        raise InstanceFormatError(f"{what} index {value} outside 1..{limit}", line)
    return value - 1


def _rational(token: str, line: int) -> object:
    try:
        return parse_rational(token)
    except (ValueError, ZeroDivisionError):
        raise InstanceFormatError(f"bad rational {token!r}", line)


def _split_groups(text: str) -> List[List[str]]:
    return [group.split() for group in text.split("|")]


class _Parser:
    def __init__(self):
        self.fields: Dict[str, object] = {}
        self.rows: List[Row] = []
        self.hulls: List[HullConstraint] = []
        self.blocks: Dict[Axis, tuple] = {}

    def _n(self, line: int) -> int:
        if "vars" not in self.fields:
            raise InstanceFormatError("'vars' must precede this line", line)
        return self.fields["vars"]

    def _once(self, key: str, line: int):
        if key in self.fields:
            raise InstanceFormatError(f"duplicate '{key}' line", line)

    def feed(self, keyword: str, rest: str, line: int):
        if keyword == "sense":
            self._once("sense", line)
            if rest not in _SENSES:
                raise InstanceFormatError(f"unknown sense {rest!r}", line)
            self.fields["sense"] = _SENSES[rest]
        elif keyword == "kind":
            self._once("kind", line)
            try:
                self.fields["kind"] = KindTag(rest)
            except ValueError:
                raise InstanceFormatError(f"unknown kind {rest!r}", line)
        elif keyword == "vars":
            self._once("vars", line)
            if not rest.isdigit():
                raise InstanceFormatError(f"bad variable count {rest!r}", line)
            self.fields["vars"] = int(rest)
        elif keyword == "obj":
            self._once("obj", line)
            tokens = rest.split()
            if len(tokens) != self._n(line):
                raise InstanceFormatError(
                    f"objective has {len(tokens)} entries, expected {self._n(line)}",
                    line,
                )
            self.fields["obj"] = [_rational(t, line) for t in tokens]
        elif keyword == "vartypes":
            self._once("vartypes", line)
            letters = rest.replace(" ", "")
            if len(letters) != self._n(line):
                raise InstanceFormatError("vartypes length differs from vars", line)
            bad = set(letters) - {VARTYPE_BINARY, VARTYPE_INTEGER, VARTYPE_CONTINUOUS}
            if bad:
                raise InstanceFormatError(f"unknown vartype {sorted(bad)[0]!r}", line)
            self.fields["vartypes"] = letters
        elif keyword == "row":
            self._row(rest, line)
        elif keyword == "hull":
            self._hull(rest, line)
        elif keyword in ("colblocks", "rowblocks"):
            axis = Axis.COLUMNS if keyword == "colblocks" else Axis.ROWS
            if axis in self.blocks:
                raise InstanceFormatError(f"duplicate '{keyword}' line", line)
            self.blocks[axis] = (rest, line)
        else:
            raise InstanceFormatError(f"unknown keyword {keyword!r}", line)

    def _row(self, rest: str, line: int):
        n = self._n(line)
        head, sep, tail = rest.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2:
            raise InstanceFormatError("expected 'row <rel> <rhs> : <j> <a_j> ...'", line)
        if parts[0] not in _RELATIONS:
            raise InstanceFormatError(f"unknown relation {parts[0]!r}", line)
        tokens = tail.split()
        if len(tokens) % 2:
            raise InstanceFormatError("row entries must come in index/value pairs", line)
        entries: Dict[int, object] = {}
        for k in range(0, len(tokens), 2):
            j = _index(tokens[k], n, line, "column")
            if j in entries:
                raise InstanceFormatError(f"column {j + 1} repeated", line)
            entries[j] = _rational(tokens[k + 1], line)
        self.rows.append(
            Row(
                coeffs=sorted(entries.items()),
                relation=_RELATIONS[parts[0]],
                rhs=_rational(parts[1], line),
            )
        )

    def _hull(self, rest: str, line: int):
        n = self._n(line)
        head, sep, tail = rest.partition(":")
        if not sep:
            raise InstanceFormatError("expected 'hull <j...> : <v...> | ...'", line)
        columns = [_index(t, n, line, "column") for t in head.split()]
        points = []
        for group in _split_groups(tail):
            if not group:
                continue
            if any(t not in ("0", "1") for t in group):
                raise InstanceFormatError("hull points must be 0/1", line)
            points.append(tuple(int(t) for t in group))
        try:
            self.hulls.append(HullConstraint(columns=columns, points=points))
        except ValidationError as e:
            raise InstanceFormatError(str(e.errors()[0]["msg"]), line)

    def partition(self, axis: Axis, size: int) -> Optional[BlockPartition]:
        if axis not in self.blocks:
            return None
        rest, line = self.blocks[axis]
        head, sep, tail = rest.partition(":")
        if not sep or not head.strip().isdigit():
            raise InstanceFormatError("expected '<count> : <i...> | ...'", line)
        groups = _split_groups(tail)
        if len(groups) != int(head):
            raise InstanceFormatError(
                f"block count {int(head)} differs from {len(groups)} groups", line
            )
        blocks = [[_index(t, max(size, 1), line, "block") for t in g] for g in groups]
        try:
            return BlockPartition(axis=axis, size=size, blocks=blocks)
        except ValidationError as e:
            raise InstanceFormatError(str(e.errors()[0]["msg"]), line)


def parse_smilp(text: str) -> SmilpDocument:
    """
    Parse SMILP v1 text into a validated instance and its partitions.
    Args:
        text: File contents
    Returns:
        SmilpDocument with the instance and any partitions present
    """
    parser = _Parser()
    header_seen = False
    last_line = 0
    for number, raw in enumerate(text.splitlines(), start=1):
        last_line = number
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if not header_seen:
            if content.split() != SMILP_HEADER.split():
                raise InstanceFormatError(f"expected header '{SMILP_HEADER}'", number)
            header_seen = True
            continue
        keyword, _, rest = content.partition(" ")
        parser.feed(keyword, rest.strip(), number)

    if not header_seen:
        raise InstanceFormatError("empty file", 1)
    for key in ("sense", "kind", "vars", "obj", "vartypes"):
        if key not in parser.fields:
            raise InstanceFormatError(f"missing '{key}' line", last_line)

    n = parser.fields["vars"]
    kinds, bounds = [], []
    for letter in parser.fields["vartypes"]:
        if letter == VARTYPE_BINARY:
            kinds.append(VarKind.INTEGER)
            bounds.append((0, 1))
        elif letter == VARTYPE_INTEGER:
            kinds.append(VarKind.INTEGER)
            bounds.append((0, None))
        else:
            kinds.append(VarKind.CONTINUOUS)
            bounds.append((0, None))
    instance = Instance(
        sense=parser.fields["sense"],
        num_vars=n,
        objective=parser.fields["obj"],
        rows=parser.rows,
        var_kind=kinds,
        var_bounds=bounds,
        kind_tag=parser.fields["kind"],
        hulls=parser.hulls,
    )
    ensure_valid(instance)
    return SmilpDocument(
        instance=instance,
        col_partition=parser.partition(Axis.COLUMNS, n),
        row_partition=parser.partition(Axis.ROWS, len(parser.rows)),
    )


def load_instance(path: Path) -> SmilpDocument:
    """Read and validate an SMILP v1 file."""
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line = data.count(b"\n", 0, e.start) + 1
        raise InstanceFormatError(f"invalid UTF-8 at byte {e.start}", line=line) from e
    document = parse_smilp(text)
    logger.debug(
        "loaded %s: %d vars, %d rows",
        path,
        document.instance.num_vars,
        document.instance.num_rows,
    )
    return document


def _vartype(kind: VarKind, bounds) -> str:
    lo, hi = bounds
    if lo != 0:
        raise InstanceFormatError("lower bounds other than 0 are not representable")
    if kind == VarKind.INTEGER and hi == 1:
        return VARTYPE_BINARY
    if hi is None:
        return VARTYPE_INTEGER if kind == VarKind.INTEGER else VARTYPE_CONTINUOUS
    raise InstanceFormatError(
        f"upper bound {format_rational(hi)} is not representable; use a row"
    )


def _blocks_line(keyword: str, partition: BlockPartition) -> str:
    groups = " | ".join(
        " ".join(str(i + 1) for i in sorted(block)) for block in partition.blocks
    )
    return f"{keyword} {partition.num_blocks} : {groups}"


def dump_smilp(
    instance: Instance, partitions: Sequence[BlockPartition] = ()
) -> str:
    """Render the canonical SMILP v1 text of an instance."""
    sense = "max" if instance.sense == Sense.MAXIMIZE else "min"
    lines = [
        SMILP_HEADER,
        f"sense {sense}",
        f"kind {instance.kind_tag.value}",
        f"vars {instance.num_vars}",
        "obj " + " ".join(format_rational(c) for c in instance.objective),
        "vartypes "
        + "".join(_vartype(k, b) for k, b in zip(instance.var_kind, instance.var_bounds)),
    ]
    for row in instance.rows:
        entries = " ".join(
            f"{j + 1} {format_rational(a)}" for j, a in sorted(row.coeffs)
        )
        head = f"row {row.relation.value} {format_rational(row.rhs)} :"
        lines.append(f"{head} {entries}" if entries else head)
    for hull in instance.hulls:
        columns = " ".join(str(j + 1) for j in hull.columns)
        points = " | ".join(" ".join(str(v) for v in p) for p in hull.points)
        lines.append(f"hull {columns} : {points}")
    by_axis = {p.axis: p for p in partitions}
    if Axis.COLUMNS in by_axis:
        lines.append(_blocks_line("colblocks", by_axis[Axis.COLUMNS]))
    if Axis.ROWS in by_axis:
        lines.append(_blocks_line("rowblocks", by_axis[Axis.ROWS]))
    return "\n".join(lines) + "\n"


def save_instance(
    instance: Instance, partitions: Sequence[BlockPartition], path: Path
) -> None:
    """Write the canonical SMILP v1 form of ``instance`` to ``path``."""
    ensure_valid(instance)
    Path(path).write_text(dump_smilp(instance, partitions), encoding="utf-8")
    logger.debug("saved %s", path)
