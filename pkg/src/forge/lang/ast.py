"""MiniC abstract syntax.

Node identity rules:
  * every node carries a ``node_id`` assigned in pre-order over the module,
    encoded as ``(file_id << NODE_ID_SHIFT) | ordinal`` so ids are unique
    program-wide and depend only on tree structure (render -> re-parse keeps
    them stable);
  * spans are source positions (1-based lines and columns, inclusive) and are
    the only part of a node that is *not* preserved by a render round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field

NODE_ID_SHIFT = 20

INT_TYPE = "int"
BUF_TYPE = "buf"

ARITH_OPS = ("+", "-", "*", "/", "%")
CMP_OPS = ("==", "!=", "<", "<=", ">", ">=")
LOGIC_OPS = ("&&", "||")
STRICT_CMP_OPS = ("<", ">")

BUILTIN_ARITY = {
    "read_int": 0,
    "read_buf": 1,
    "alloc": 1,
    "len": 1,
    "print": 1,
    "abort": 1,
}


@dataclass(frozen=True, slots=True)
class SourceFile:
    path: str
    content: str
    file_id: int


@dataclass(frozen=True, slots=True)
class Span:
    file_id: int
    start_line: int
    start_col: int
    end_line: int
    end_col: int


def _span_placeholder() -> Span:
    return Span(0, 0, 0, 0, 0)


@dataclass(slots=True)
class Node:
    node_id: int = field(default=-1, init=False)
    span: Span = field(default_factory=_span_placeholder, init=False)


@dataclass(slots=True)
class IntLit(Node):
    value: int


@dataclass(slots=True)
class VarRef(Node):
    name: str


@dataclass(slots=True)
class BinOp(Node):
    op: str
    left: Node
    right: Node


@dataclass(slots=True)
class UnaryOp(Node):
    op: str
    operand: Node


@dataclass(slots=True)
class IndexExpr(Node):
    base: Node
    index: Node


@dataclass(slots=True)
class CallExpr(Node):
    name: str
    args: list[Node]


@dataclass(slots=True)
class LetStmt(Node):
    name: str
    value: Node


@dataclass(slots=True)
class AssignStmt(Node):
    name: str
    value: Node


@dataclass(slots=True)
class IndexAssign(Node):
    base: VarRef
    index: Node
    value: Node


@dataclass(slots=True)
class Block(Node):
    statements: list[Node]


@dataclass(slots=True)
class IfStmt(Node):
    cond: Node
    then_block: Block
    else_block: Block | None


@dataclass(slots=True)
class WhileStmt(Node):
    cond: Node
    body: Block


@dataclass(slots=True)
class ReturnStmt(Node):
    value: Node


@dataclass(slots=True)
class ExprStmt(Node):
    expr: Node


@dataclass(slots=True)
class Param(Node):
    name: str
    type: str


@dataclass(slots=True)
class ConstDecl(Node):
    name: str
    value: int


@dataclass(slots=True)
class FuncDecl(Node):
    name: str
    params: list[Param]
    ret_type: str
    body: Block


@dataclass(slots=True)
class Module:
    path: str
    file_id: int
    items: list[Node]  # ConstDecl | FuncDecl in source order
    comments: list[tuple[int, str]]  # (line, text) pairs, not round-tripped

    @property
    def functions(self) -> list[FuncDecl]:
        return [it for it in self.items if isinstance(it, FuncDecl)]

    @property
    def consts(self) -> list[ConstDecl]:
        return [it for it in self.items if isinstance(it, ConstDecl)]


STMT_TYPES = (LetStmt, AssignStmt, IndexAssign, IfStmt, WhileStmt, ReturnStmt, ExprStmt)


def children(node: Node) -> list[Node]:
    """Syntactic children in source order (drives pre-order id assignment)."""
    if isinstance(node, (IntLit, VarRef, Param, ConstDecl)):
        return []
    if isinstance(node, BinOp):
        return [node.left, node.right]
    if isinstance(node, UnaryOp):
        return [node.operand]
    if isinstance(node, IndexExpr):
        return [node.base, node.index]
    if isinstance(node, CallExpr):
        return list(node.args)
    if isinstance(node, (LetStmt, AssignStmt)):
        return [node.value]
    if isinstance(node, IndexAssign):
        return [node.base, node.index, node.value]
    if isinstance(node, Block):
        return list(node.statements)
    if isinstance(node, IfStmt):
        out: list[Node] = [node.cond, node.then_block]
        if node.else_block is not None:
            out.append(node.else_block)
        return out
    if isinstance(node, WhileStmt):
        return [node.cond, node.body]
    if isinstance(node, ReturnStmt):
        return [node.value]
    if isinstance(node, ExprStmt):
        return [node.expr]
    if isinstance(node, FuncDecl):
        return [*node.params, node.body]
    raise TypeError(f"unknown node type {type(node).__name__}")


def assign_node_ids(module: Module) -> None:
    """Number all nodes pre-order; ids depend only on structure and file_id."""
    counter = 0
    base = module.file_id << NODE_ID_SHIFT

    def visit(node: Node) -> None:
        nonlocal counter
        node.node_id = base + counter
        counter += 1
        for child in children(node):
            visit(child)

    for item in module.items:
        visit(item)


def iter_nodes(module: Module):
    """Pre-order traversal over all nodes of a module."""
    stack = list(reversed(module.items))
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def node_file_id(node_id: int) -> int:
    return node_id >> NODE_ID_SHIFT


def static_branch_ids(modules: list[Module]) -> frozenset[tuple[int, bool]]:
    """All branch ids a program can ever cover (the coverage universe)."""
    out: set[tuple[int, bool]] = set()
    for module in modules:
        for node in iter_nodes(module):
            if isinstance(node, STMT_TYPES):
                out.add((node.node_id, True))
                if isinstance(node, (IfStmt, WhileStmt)):
                    out.add((node.node_id, False))
    return frozenset(out)


def structurally_equal(a: Node | Module, b: Node | Module) -> bool:
    """Equality of shape, names, values, and node_ids; spans are ignored."""
    if isinstance(a, Module) or isinstance(b, Module):
        if not (isinstance(a, Module) and isinstance(b, Module)):
            return False
        if len(a.items) != len(b.items):
            return False
        return all(structurally_equal(x, y) for x, y in zip(a.items, b.items))
    if type(a) is not type(b) or a.node_id != b.node_id:
        return False
    for attr in ("name", "op", "value", "type", "ret_type"):
        av = getattr(a, attr, None)
        bv = getattr(b, attr, None)
        if isinstance(av, Node) or isinstance(bv, Node):
            continue
        if av != bv:
            return False
    ca, cb = children(a), children(b)
    if len(ca) != len(cb):
        return False
    return all(structurally_equal(x, y) for x, y in zip(ca, cb))
