"""Statement- and expression-level differencing of example snippets.

Statement matching runs in two passes: exact canonical-text matches first,
then normalized-similarity matches at or above SIMILARITY_THRESHOLD
(greedy best-first, injective, position-aware tie-breaking).  Matched but
unequal statements become statement updates, which are then refined into
expression-level updates by simultaneous top-down tree comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .frontend import (
    MethodDecl, Node, Stmt, method_scope, normalize_matching, stmt_text,
)
from .frontend.normalize import ABSTRACT_VAR_RE, NormalizedForm

SIMILARITY_THRESHOLD = 0.8


def levenshtein(a: str, b: str) -> int:
    """Minimum character insert/delete/substitute edits between a and b."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1,          # delete
                           cur[j - 1] + 1,       # insert
                           prev[j - 1] + (ca != cb)))  # substitute
        prev = cur
    return prev[-1]


def similarity(n_i: NormalizedForm | str, n_s: NormalizedForm | str) -> float:
    """1 - edit_distance / max_length over normalized texts, in [0, 1].

    Two empty texts are degenerate and defined as identical (1.0).
    """
    a = n_i.text if isinstance(n_i, NormalizedForm) else n_i
    b = n_s.text if isinstance(n_s, NormalizedForm) else n_s
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / longest


@dataclass
class EditOp:
    kind: str  # 'insert' | 'delete' | 'update'
    granularity: str = "statement"  # 'statement' | 'expression'
    node: Node | None = None        # inserted or deleted node
    old_node: Node | None = None    # update source (in I)
    new_node: Node | None = None    # update target (in S)
    parent: Node | None = None      # insert parent (S method body)
    position: int = -1              # insert: index among S statements
    i_index: int = -1               # statement index in I, when applicable
    s_index: int = -1               # statement index in S, when applicable


@dataclass
class EditScript:
    ops: list[EditOp] = field(default_factory=list)
    # (i_index, s_index, sim); sim == 1.0 for exact canonical matches
    stmt_matches: list[tuple[int, int, float]] = field(default_factory=list)
    seed_var_map: dict[str, str] = field(default_factory=dict)

    @property
    def updates(self) -> list[EditOp]:
        return [op for op in self.ops if op.kind == "update"]

    @property
    def inserts(self) -> list[EditOp]:
        return [op for op in self.ops if op.kind == "insert"]

    @property
    def deletes(self) -> list[EditOp]:
        return [op for op in self.ops if op.kind == "delete"]


def diff_statements(insecure: MethodDecl, secure: MethodDecl) -> EditScript:
    """Compute the statement-level edit script transforming I into S."""
    i_stmts = insecure.body.stmts
    s_stmts = secure.body.stmts
    i_scope = method_scope(insecure)
    s_scope = method_scope(secure)
    i_canon = [stmt_text(s) for s in i_stmts]
    s_canon = [stmt_text(s) for s in s_stmts]

    matched_i: dict[int, tuple[int, float]] = {}
    matched_s: set[int] = set()

    # pass 1: exact canonical text, first unmatched in order
    for i, text in enumerate(i_canon):
        for j, other in enumerate(s_canon):
            if j in matched_s:
                continue
            if text == other:
                matched_i[i] = (j, 1.0)
                matched_s.add(j)
                break

    # pass 2: normalized similarity >= threshold, greedy best-first
    i_norms = {i: normalize_matching(i_stmts[i], i_scope)
               for i in range(len(i_stmts)) if i not in matched_i}
    s_norms = {j: normalize_matching(s_stmts[j], s_scope)
               for j in range(len(s_stmts)) if j not in matched_s}
    candidates = []
    for i, ni in i_norms.items():
        for j, nj in s_norms.items():
            sim = similarity(ni, nj)
            if sim >= SIMILARITY_THRESHOLD:
                candidates.append((-sim, abs(i - j), i, j, sim))
    for _, _, i, j, sim in sorted(candidates):
        if i in matched_i or j in matched_s:
            continue
        matched_i[i] = (j, sim)
        matched_s.add(j)

    script = EditScript()
    script.stmt_matches = sorted((i, j, sim) for i, (j, sim) in matched_i.items())
    for i, (j, sim) in sorted(matched_i.items()):
        if i_canon[i] != s_canon[j]:
            script.ops.append(EditOp(kind="update", old_node=i_stmts[i],
                                     new_node=s_stmts[j], i_index=i, s_index=j))
    for i, stmt in enumerate(i_stmts):
        if i not in matched_i:
            script.ops.append(EditOp(kind="delete", node=stmt, i_index=i))
    for j, stmt in enumerate(s_stmts):
        if j not in matched_s:
            script.ops.append(EditOp(kind="insert", node=stmt,
                                     parent=secure.body, position=j, s_index=j))

    script.seed_var_map = _seed_var_map(script.stmt_matches, i_stmts, s_stmts,
                                        i_scope, s_scope)
    return script


def _seed_var_map(matches, i_stmts, s_stmts, i_scope, s_scope) -> dict[str, str]:
    """Shared abstract names for variables common to matched statements.

    Variables are aligned positionally within each matched pair; only
    name-equal alignments are kept, so identifiers used on both sides map
    to one abstract variable while side-specific ones are numbered later
    by whoever consumes the seed.
    """
    ordered: list[str] = []
    for i, j, _sim in matches:
        i_vars = _real_vars(normalize_matching(i_stmts[i], i_scope))
        s_vars = _real_vars(normalize_matching(s_stmts[j], s_scope))
        for a, b in zip(i_vars, s_vars):
            if a == b and a not in ordered:
                ordered.append(a)
    return {name: f"$v_{k}" for k, name in enumerate(ordered)}


def _real_vars(form: NormalizedForm) -> list[str]:
    """Concrete variable names in first-occurrence order (no placeholders)."""
    return [name for name, token in form.var_map.items()
            if ABSTRACT_VAR_RE.match(token)]


def refine_update(op: EditOp) -> list[EditOp]:
    """Refine a statement-level update into expression-level updates.

    Both trees are walked in preorder simultaneously; inner nodes compare by
    kind and structural label, leaves by content.  Each maximal unmatched
    subtree pair yields one expression update.  A root mismatch keeps the
    statement-level op.
    """
    assert op.kind == "update" and op.granularity == "statement"
    pairs: list[tuple[Node, Node]] = []
    _descend(op.old_node, op.new_node, pairs)
    if len(pairs) == 1 and pairs[0][0] is op.old_node:
        return [op]
    return [EditOp(kind="update", granularity="expression", old_node=a,
                   new_node=b, i_index=op.i_index, s_index=op.s_index)
            for a, b in pairs]


def _descend(a: Node, b: Node, out: list[tuple[Node, Node]]):
    ca, cb = a.children, b.children
    if a.kind != b.kind or a.label != b.label or len(ca) != len(cb):
        out.append((a, b))
        return
    if not ca:
        if a.text != b.text:
            out.append((a, b))
        return
    for x, y in zip(ca, cb):
        _descend(x, y, out)


def refine_script(script: EditScript) -> EditScript:
    """Apply refine_update to every statement-level update in a script."""
    refined = EditScript(stmt_matches=script.stmt_matches,
                         seed_var_map=script.seed_var_map)
    for op in script.ops:
        if op.kind == "update" and op.granularity == "statement":
            refined.ops.extend(refine_update(op))
        else:
            refined.ops.append(op)
    return refined


def apply_script(script: EditScript, i_stmts: list[Stmt]) -> list[str]:
    """Replay a statement-level script over I's statements (soundness check).

    Returns the canonical texts of the resulting statement list, which must
    equal S's statement texts.
    """
    matched = {i: (j, op) for op in script.ops if op.kind == "update"
               for i, j in [(op.i_index, op.s_index)]}
    exact = {i: j for i, j, _ in script.stmt_matches}
    deleted = {op.i_index for op in script.ops if op.kind == "delete"}
    kept: list[tuple[int, str]] = []  # (s position, text)
    for i, stmt in enumerate(i_stmts):
        if i in deleted:
            continue
        if i in matched:
            j, op = matched[i]
            kept.append((j, stmt_text(op.new_node)))
        else:
            kept.append((exact[i], stmt_text(stmt)))
    kept.sort()
    result = [text for _, text in kept]
    for op in sorted((op for op in script.ops if op.kind == "insert"),
                     key=lambda op: op.position):
        result.insert(op.position, stmt_text(op.node))
    return result
