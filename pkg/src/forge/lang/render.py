"""Canonical MiniC pretty-printer.

Canonical form: 2-space indentation, one statement per line, operators spaced,
parentheses only where precedence demands, empty else branches omitted,
comments dropped. parse(render(m)) is structurally equal to m.
"""

from __future__ import annotations

from forge.lang import ast

_PREC = {
    "||": 1,
    "&&": 2,
    "==": 3,
    "!=": 3,
    "<": 3,
    "<=": 3,
    ">": 3,
    ">=": 3,
    "+": 4,
    "-": 4,
    "*": 5,
    "/": 5,
    "%": 5,
}
_UNARY_PREC = 6
_POSTFIX_PREC = 7


def render_expr(node: ast.Node) -> str:
    text, _ = _expr(node)
    return text


def _expr(node: ast.Node) -> tuple[str, int]:
    if isinstance(node, ast.IntLit):
        return str(node.value), _POSTFIX_PREC
    if isinstance(node, ast.VarRef):
        return node.name, _POSTFIX_PREC
    if isinstance(node, ast.CallExpr):
        args = ", ".join(render_expr(a) for a in node.args)
        return f"{node.name}({args})", _POSTFIX_PREC
    if isinstance(node, ast.IndexExpr):
        base, base_prec = _expr(node.base)
        if base_prec < _POSTFIX_PREC:
            base = f"({base})"
        return f"{base}[{render_expr(node.index)}]", _POSTFIX_PREC
    if isinstance(node, ast.UnaryOp):
        operand, operand_prec = _expr(node.operand)
        if operand_prec < _UNARY_PREC:
            operand = f"({operand})"
        return f"{node.op}{operand}", _UNARY_PREC
    if isinstance(node, ast.BinOp):
        prec = _PREC[node.op]
        left, left_prec = _expr(node.left)
        right, right_prec = _expr(node.right)
        if left_prec < prec:
            left = f"({left})"
        if right_prec <= prec:
            right = f"({right})"
        return f"{left} {node.op} {right}", prec
    raise TypeError(f"not an expression node: {type(node).__name__}")


def render_statements(
    statements: list[ast.Node], indent: int, line_map: dict[int, int] | None = None, base: int = 0
) -> list[str]:
    """Render statements at the given indent depth.

    When ``line_map`` is given, it is filled with node_id -> 0-based line
    offset (relative to ``base``) for every rendered statement, which lets
    patch construction locate a statement inside replacement text.
    """
    lines: list[str] = []
    pad = "  " * indent

    for stmt in statements:
        if line_map is not None:
            line_map[stmt.node_id] = base + len(lines)
        if isinstance(stmt, ast.LetStmt):
            lines.append(f"{pad}let {stmt.name} = {render_expr(stmt.value)};")
        elif isinstance(stmt, ast.AssignStmt):
            lines.append(f"{pad}{stmt.name} = {render_expr(stmt.value)};")
        elif isinstance(stmt, ast.IndexAssign):
            lines.append(
                f"{pad}{stmt.base.name}[{render_expr(stmt.index)}] = {render_expr(stmt.value)};"
            )
        elif isinstance(stmt, ast.ReturnStmt):
            lines.append(f"{pad}return {render_expr(stmt.value)};")
        elif isinstance(stmt, ast.ExprStmt):
            lines.append(f"{pad}{render_expr(stmt.expr)};")
        elif isinstance(stmt, ast.IfStmt):
            lines.append(f"{pad}if ({render_expr(stmt.cond)}) {{")
            lines.extend(
                render_statements(stmt.then_block.statements, indent + 1, line_map, base + len(lines))
            )
            if stmt.else_block is not None and stmt.else_block.statements:
                lines.append(f"{pad}}} else {{")
                lines.extend(
                    render_statements(
                        stmt.else_block.statements, indent + 1, line_map, base + len(lines)
                    )
                )
            lines.append(f"{pad}}}")
        elif isinstance(stmt, ast.WhileStmt):
            lines.append(f"{pad}while ({render_expr(stmt.cond)}) {{")
            lines.extend(
                render_statements(stmt.body.statements, indent + 1, line_map, base + len(lines))
            )
            lines.append(f"{pad}}}")
        else:
            raise TypeError(f"not a statement node: {type(stmt).__name__}")
    return lines


def render(module: ast.Module) -> str:
    """Serialize a module to canonical MiniC source."""
    chunks: list[str] = []
    for item in module.items:
        if isinstance(item, ast.ConstDecl):
            chunks.append(f"const {item.name} = {item.value};")
        elif isinstance(item, ast.FuncDecl):
            params = ", ".join(f"{p.name}: {p.type}" for p in item.params)
            lines = [f"fn {item.name}({params}) -> {item.ret_type} {{"]
            lines.extend(render_statements(item.body.statements, 1))
            lines.append("}")
            chunks.append("\n".join(lines))
        else:
            raise TypeError(f"not a top-level item: {type(item).__name__}")
    return "\n\n".join(chunks) + "\n"
