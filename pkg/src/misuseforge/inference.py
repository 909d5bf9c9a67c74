"""Pattern inference: generalize a vulnerability-repair pattern from a pair.

Given an <insecure, secure> snippet pair, the engine diffs them, locates the
critical security API (update dependence, then overridden API, then deleted
call), extracts the edit-relevant context, abstracts it into a template with
per-argument dataflow edges, derives the abstract fix from the secure side,
and interprets example-definition constructs (constant placeholders, option
sets, secure value ranges).
"""

from __future__ import annotations

from dataclasses import dataclass

from .astwalk import (
    calls_in, containing_stmt, defined_name, expr_nodes, find_path,
    flat_stmts, name_reads, stmt_expr_nodes, type_env,
)
from .catalog import CTOR, ApiBinding, SecurityApiCatalog
from .diffing import EditScript, diff_statements, refine_script
from .errors import MalformedEdl, NoCriticalApi
from .frontend import (
    EDL_OPTION_GETTER, Expr, MethodDecl, Node, Stmt, edl_placeholder_domain,
    expr_text, is_constant_chain, is_edl_option_ctor, method_scope,
    normalize_template, parse_snippet,
)
from .patterns import (
    FORM_DELETED, FORM_INVOCATION, FORM_OVERRIDE, MODE_EXPR, MODE_SNIPPET,
    DataflowEdge, EdlDirective, Pattern, RECEIVER_INDEX, SRC_EDL_INT,
    SRC_EDL_OPTIONS, SRC_EDL_RANGE, SRC_EDL_STRING, SRC_FREE, SRC_LITERAL,
    SRC_STMT,
)


@dataclass
class CriticalApi:
    binding: ApiBinding
    form: str
    arg_index: int | None = None
    site_stmt: Stmt | None = None   # statement holding the invocation (in I)
    call: Node | None = None        # the invocation / creation node


# ----------------------------------------------------------- call resolution


def resolve_call(call: Node, method: MethodDecl,
                 catalog: SecurityApiCatalog) -> ApiBinding | None:
    """Resolve a call against the catalog by (static type, name, arity)."""
    if call.kind == "objectCreation":
        return catalog.lookup(call.type_name, CTOR, len(call.args))
    if call.kind != "methodCall" or call.receiver is None:
        return None
    env = type_env(method)
    rtype = static_type(call.receiver, env, method)
    if rtype is None:
        return None
    return catalog.lookup(rtype, call.name, len(call.args))


def static_type(expr: Expr, env: dict[str, str],
                method: MethodDecl) -> str | None:
    kind = expr.kind
    if kind == "nameRef":
        if expr.name in env:
            return env[expr.name]
        if expr.name and expr.name[0].isupper():
            return expr.name  # class-name receiver (static style)
        return None
    if kind == "objectCreation":
        return expr.type_name
    if kind == "cast":
        return expr.type_name
    if kind == "this":
        return method.owner.name if method.owner else None
    if kind == "fieldAccess" and expr.receiver.kind == "this":
        return env.get(expr.name)
    if kind == "stringLit":
        return "String"
    return None


# ----------------------------------------------------------- critical API


def _enclosing_catalog_call(method: MethodDecl, node: Node,
                            catalog: SecurityApiCatalog):
    """Nearest catalog call above ``node``; returns (binding, argIdx, stmt, call)."""
    stmt = containing_stmt(method, node)
    if stmt is None:
        return None
    path = find_path(stmt, node)
    for depth in range(len(path) - 2, -1, -1):
        anc = path[depth]
        if anc.kind not in ("methodCall", "objectCreation"):
            continue
        binding = resolve_call(anc, method, catalog)
        if binding is None:
            continue
        below = path[depth + 1]
        if anc.kind == "methodCall" and below is anc.receiver:
            arg_index = RECEIVER_INDEX
        else:
            arg_index = next(i for i, a in enumerate(anc.args) if a is below)
        return binding, arg_index, stmt, anc
    return None


def api_dependent_on(expr: Node, method: MethodDecl,
                     catalog: SecurityApiCatalog):
    """Catalog invocation (directly or through local def-use) using ``expr``.

    Returns (binding, argIndex, site statement, call node) or None.
    """
    visited: set[str] = set()
    frontier: list[Node] = [expr]
    while frontier:
        node = frontier.pop(0)
        hit = _enclosing_catalog_call(method, node, catalog)
        if hit is not None:
            return hit
        stmt = containing_stmt(method, node)
        if stmt is None:
            continue
        var = defined_name(stmt)
        if var is None or var in visited:
            continue
        visited.add(var)
        for other in flat_stmts(method.body.stmts):
            if other is stmt:
                continue
            for read in name_reads(other):
                if read.name == var:
                    frontier.append(read)
    return None


def find_critical_api(script: EditScript, insecure: MethodDecl,
                      secure: MethodDecl,
                      catalog: SecurityApiCatalog) -> CriticalApi:
    """Identify the critical API for a refined edit script.

    Priority: (1) catalog invocation data-dependent on an updated
    expression, (2) an overridden catalog method enclosing all edits,
    (3) a deleted catalog call.
    """
    if not script.ops:
        raise NoCriticalApi("edit script is empty")
    for op in script.updates:
        for node, method in ((op.old_node, insecure), (op.new_node, secure)):
            hit = api_dependent_on(node, method, catalog)
            if hit is None:
                continue
            binding, arg_index, stmt, call = hit
            if method is secure:
                # anchor the site in I when the same call exists there
                i_site = _find_call_site(insecure, binding, catalog)
                if i_site is not None:
                    stmt, call = i_site
            return CriticalApi(binding=binding, form=FORM_INVOCATION,
                               arg_index=arg_index, site_stmt=stmt, call=call)
    if insecure.is_override and insecure.owner is not None:
        for super_type in insecure.owner.super_types:
            entry = catalog.lookup(super_type, insecure.name, len(insecure.params))
            if entry is not None and entry.overridable:
                return CriticalApi(binding=entry, form=FORM_OVERRIDE)
    for op in script.deletes:
        for call in calls_in(op.node):
            entry = resolve_call(call, insecure, catalog)
            if entry is not None:
                return CriticalApi(binding=entry, form=FORM_DELETED,
                                   site_stmt=op.node, call=call)
    raise NoCriticalApi("no security API is implicated by the edit script")


def _find_call_site(method: MethodDecl, binding: ApiBinding,
                    catalog: SecurityApiCatalog):
    for stmt in flat_stmts(method.body.stmts):
        for call in calls_in(stmt):
            if resolve_call(call, method, catalog) == binding:
                return stmt, call
    return None


# ----------------------------------------------------------- context


def extract_context(insecure: MethodDecl, critical: CriticalApi) -> list[Stmt]:
    """Edit-relevant context: statements the critical invocation depends on.

    For overridden methods the whole body is the context; otherwise the
    transitive intra-procedural definition closure of the invocation's
    receiver and arguments, plus the invocation statement itself.
    """
    if critical.form == FORM_OVERRIDE:
        return list(insecure.body.stmts)
    stmts = insecure.body.stmts
    site = critical.site_stmt
    included = {id(site)}
    worklist = [read.name for read in name_reads(site)]
    seen_names: set[str] = set()
    while worklist:
        name = worklist.pop(0)
        if name in seen_names:
            continue
        seen_names.add(name)
        for stmt in stmts:
            if defined_name(stmt) == name and id(stmt) not in included:
                included.add(id(stmt))
                worklist.extend(read.name for read in name_reads(stmt))
    return [s for s in stmts if id(s) in included]


def find_anchors(context: list[Stmt], insecure: MethodDecl,
                 critical: CriticalApi,
                 catalog: SecurityApiCatalog) -> list[str]:
    """Bindings of other security APIs invoked by the context code."""
    anchors = []
    for stmt in context:
        for call in calls_in(stmt):
            entry = resolve_call(call, insecure, catalog)
            if entry is not None and entry.binding != critical.binding.binding:
                if entry.binding not in anchors:
                    anchors.append(entry.binding)
    return sorted(anchors)


# ----------------------------------------------------------- EDL detection


def _collect_placeholders(method: MethodDecl) -> list[str]:
    domains = []
    for stmt in flat_stmts(method.body.stmts):
        for node in stmt_expr_nodes(stmt):
            domain = edl_placeholder_domain(node)
            if domain is not None:
                domains.append(domain)
    return domains


def _find_option_lists(method: MethodDecl):
    """(varName, values, ctorStmt) for StringLiterals-style constructions."""
    out = []
    for stmt in flat_stmts(method.body.stmts):
        if stmt.kind == "localDecl" and stmt.init is not None \
                and is_edl_option_ctor(stmt.init):
            values = []
            for arg in stmt.init.args:
                if arg.kind == "stringLit":
                    values.append(arg.value)
                elif arg.kind == "intLit":
                    values.append(str(arg.value))
                else:
                    raise MalformedEdl(
                        "option-list constructor arguments must be literals")
            out.append((stmt.name, values, stmt))
    return out


def _option_consumed(method: MethodDecl, var: str) -> Node | None:
    for stmt in flat_stmts(method.body.stmts):
        for node in stmt_expr_nodes(stmt):
            if (node.kind == "methodCall" and node.name == EDL_OPTION_GETTER
                    and node.receiver is not None
                    and node.receiver.kind == "nameRef"
                    and node.receiver.name == var):
                return node
    return None


def detect_edl(insecure: MethodDecl, secure: MethodDecl,
               catalog: SecurityApiCatalog | None = None,
               script: EditScript | None = None,
               critical: CriticalApi | None = None) -> list[EdlDirective]:
    """Interpret example-definition constructs in a pair.

    Detects constant placeholders, insecure/secure option sets, and secure
    value ranges inferred from an int-literal update flowing into the
    critical API.
    """
    directives: list[EdlDirective] = []

    if _collect_placeholders(secure):
        raise MalformedEdl("constant placeholders are only valid in the "
                           "insecure example")
    for domain in sorted(set(_collect_placeholders(insecure))):
        directives.append(EdlDirective(kind="constantPlaceholder", domain=domain))

    i_options = _find_option_lists(insecure)
    s_options = _find_option_lists(secure)
    for var, values, _stmt in i_options + s_options:
        method = insecure if (var, values, _stmt) in i_options else secure
        if _option_consumed(method, var) is None:
            raise MalformedEdl(
                f"option list {var!r} is constructed but its value is never "
                f"consumed via {EDL_OPTION_GETTER}()")
    if i_options and s_options:
        var, insecure_values, _ = i_options[0]
        _, secure_values, _ = s_options[0]
        overlap = set(insecure_values) & set(secure_values)
        if overlap:
            raise MalformedEdl(
                f"option {sorted(overlap)[0]!r} appears as both insecure and secure")
        arg_index = 0
        if catalog is not None:
            consumer = _option_consumed(insecure, var)
            hit = api_dependent_on(consumer, insecure, catalog)
            if hit is not None:
                arg_index = hit[1]
        directives.append(EdlDirective(kind="optionSet", insecure=insecure_values,
                                       secure=secure_values, arg_index=arg_index))

    if script is not None and critical is not None \
            and critical.form == FORM_INVOCATION and catalog is not None:
        for op in script.updates:
            if op.granularity != "expression":
                continue
            old, new = op.old_node, op.new_node
            if old.kind != "intLit" or new.kind != "intLit":
                continue
            if old.value >= new.value:
                continue
            hit = api_dependent_on(old, insecure, catalog)
            if hit is None or hit[0].binding != critical.binding.binding:
                continue
            stmt = containing_stmt(insecure, old)
            path = find_path(stmt, old)
            parent = path[-2] if len(path) >= 2 else None
            dimension = "arrayLength" if parent is not None \
                and parent.kind == "arrayCreation" else "argValue"
            directives.append(EdlDirective(kind="valueRange", min_value=new.value,
                                           dimension=dimension, arg_index=hit[1]))
    return directives


# ----------------------------------------------------------- fix derivation


def select_fix_stmts(secure: MethodDecl, script: EditScript,
                     context: list[Stmt], insecure: MethodDecl) -> list[Stmt]:
    """Fix-relevant statements of S, in order: unchanged context, inserted
    statements, and new versions of updated context statements."""
    context_ids = {id(s) for s in context}
    i_stmts = insecure.body.stmts
    include: set[int] = set()
    for op in script.inserts:
        include.add(op.s_index)
    for i, j, _sim in script.stmt_matches:
        if id(i_stmts[i]) in context_ids:
            include.add(j)
    return [s for j, s in enumerate(secure.body.stmts) if j in include]


def _fix_mode(script: EditScript) -> str:
    if len(script.ops) == 1 and script.ops[0].kind == "update":
        return MODE_EXPR
    return MODE_SNIPPET


def _abstract_expr_text(expr: Expr, var_map: dict[str, str]) -> str:
    import re as _re
    text = expr_text(expr)
    for name, token in var_map.items():
        text = _re.sub(rf"(?<![\w$]){_re.escape(name)}(?![\w$])", token, text)
    return text


# ----------------------------------------------------------- dataflow edges


def _chain_base_literal(expr: Expr) -> Expr | None:
    """The literal at the base of a constant-wrapper chain."""
    if expr.kind in ("stringLit", "intLit"):
        return expr
    if expr.kind == "methodCall" and expr.receiver is not None:
        if not expr.args:
            return _chain_base_literal(expr.receiver)
        if expr.name == "valueOf":
            return _chain_base_literal(expr.args[0])
        return None
    if expr.kind == "objectCreation" and len(expr.args) == 1:
        return _chain_base_literal(expr.args[0])
    return None


def _contains_placeholder(expr: Expr) -> str | None:
    for node in expr_nodes(expr):
        domain = edl_placeholder_domain(node)
        if domain is not None:
            return domain
    return None


def build_dataflow(critical: CriticalApi, context: list[Stmt],
                   var_map: dict[str, str],
                   directives: list[EdlDirective]) -> list[DataflowEdge]:
    """One edge per critical-call argument (and variable receiver)."""
    call = critical.call
    if call is None:
        return []
    option_args = {d.arg_index for d in directives if d.kind == "optionSet"}
    range_args = {d.arg_index for d in directives if d.kind == "valueRange"}

    def def_stmt_index(name: str) -> int | None:
        for k, stmt in enumerate(context):
            if defined_name(stmt) == name and stmt is not critical.site_stmt:
                return k
        return None

    def classify(arg: Expr, index: int) -> DataflowEdge | None:
        if index in option_args:
            return DataflowEdge(SRC_EDL_OPTIONS, index)
        if index in range_args:
            return DataflowEdge(SRC_EDL_RANGE, index)
        domain = _contains_placeholder(arg)
        if domain is not None:
            src = SRC_EDL_STRING if domain == "string" else SRC_EDL_INT
            return DataflowEdge(src, index)
        if is_constant_chain(arg):
            base = _chain_base_literal(arg)
            if base is not None:
                return DataflowEdge(SRC_LITERAL + base.text, index)
        if arg.kind == "nameRef":
            k = def_stmt_index(arg.name)
            if k is not None:
                return DataflowEdge(SRC_STMT + str(k), index)
            token = var_map.get(arg.name)
            if token is not None:
                return DataflowEdge(SRC_FREE + token, index)
        return None

    edges = []
    if call.kind == "methodCall" and call.receiver is not None \
            and call.receiver.kind == "nameRef" \
            and call.receiver.name in var_map:
        edge = classify(call.receiver, RECEIVER_INDEX)
        if edge is not None:
            edges.append(edge)
    for i, arg in enumerate(call.args):
        edge = classify(arg, i)
        if edge is not None:
            edges.append(edge)
    return edges


# ----------------------------------------------------------- orchestration


def infer_pattern(insecure_source: str, secure_source: str,
                  catalog: SecurityApiCatalog) -> Pattern:
    """Infer a vulnerability-repair pattern from an example pair."""
    insecure = parse_snippet(insecure_source)
    secure = parse_snippet(secure_source, keep_comments=True)
    script = refine_script(diff_statements(insecure, secure))
    if not script.ops:
        raise NoCriticalApi("insecure and secure examples are identical")
    critical = find_critical_api(script, insecure, secure, catalog)
    directives = detect_edl(insecure, secure, catalog=catalog,
                            script=script, critical=critical)
    context = extract_context(insecure, critical)
    anchors = find_anchors(context, insecure, critical, catalog)
    fix_stmts = select_fix_stmts(secure, script, context, insecure)

    relevant = _relevant_names(context, fix_stmts)
    seed = {name: f"$v_{k}" for k, name in enumerate(
        n for n in script.seed_var_map if n in relevant)}

    i_scope = method_scope(insecure)
    s_scope = method_scope(secure)
    template_text, var_map = normalize_template(context, seed_map=seed,
                                                declared=i_scope)
    edges = build_dataflow(critical, context, var_map, directives)
    fix_text, var_map = normalize_template(fix_stmts, seed_map=var_map,
                                           declared=s_scope,
                                           include_comments=True)
    mode = _fix_mode(script)
    old_expr = new_expr = None
    if mode == MODE_EXPR:
        op = script.updates[0]
        old_expr = _abstract_expr_text(op.old_node, var_map)
        new_expr = _abstract_expr_text(op.new_node, var_map)

    param_vars = None
    if critical.form == FORM_OVERRIDE:
        param_vars = []
        for _t, pname in insecure.params:
            if pname not in var_map:
                var_map[pname] = f"$v_{_next_index(var_map)}"
            param_vars.append(var_map[pname])

    return Pattern(binding=critical.binding.binding, form=critical.form,
                   arg_index=critical.arg_index if critical.arg_index is not None
                   and critical.arg_index >= 0 else None,
                   param_vars=param_vars, anchors=anchors,
                   template_text=template_text, dataflow=edges,
                   fix_text=fix_text, fix_mode=mode, old_expr=old_expr,
                   new_expr=new_expr, var_map=var_map, edl=directives)


def _next_index(var_map: dict[str, str]) -> int:
    import re as _re
    used = [int(m.group(1)) for v in var_map.values()
            for m in [_re.match(r"\$v_(\d+)$", v)] if m]
    return max(used) + 1 if used else 0


def _relevant_names(context: list[Stmt], fix_stmts: list[Stmt]) -> set[str]:
    names: set[str] = set()
    for stmt in context + fix_stmts:
        name = defined_name(stmt)
        if name is not None:
            names.add(name)
        names.update(read.name for read in name_reads(stmt))
    return names
