from forge.lang.ast import (
    AssignStmt,
    Block,
    CallExpr,
    ConstDecl,
    ExprStmt,
    FuncDecl,
    IfStmt,
    IndexAssign,
    IndexExpr,
    IntLit,
    LetStmt,
    Module,
    Param,
    ReturnStmt,
    Span,
    UnaryOp,
    VarRef,
    WhileStmt,
    BinOp,
    SourceFile,
    children,
    iter_nodes,
    structurally_equal,
)
from forge.lang.parser import parse_file
from forge.lang.render import render
from forge.lang.linker import Program, link
from forge.lang.interp import (
    CrashKind,
    CrashSignature,
    ExecutionResult,
    Limits,
    RunStatus,
    run,
)

__all__ = [
    "AssignStmt",
    "BinOp",
    "Block",
    "CallExpr",
    "ConstDecl",
    "CrashKind",
    "CrashSignature",
    "ExecutionResult",
    "ExprStmt",
    "FuncDecl",
    "IfStmt",
    "IndexAssign",
    "IndexExpr",
    "IntLit",
    "LetStmt",
    "Limits",
    "Module",
    "Param",
    "Program",
    "ReturnStmt",
    "RunStatus",
    "SourceFile",
    "Span",
    "UnaryOp",
    "VarRef",
    "WhileStmt",
    "children",
    "iter_nodes",
    "link",
    "parse_file",
    "render",
    "run",
    "structurally_equal",
]
