"""Whole-program linking: resolution, typing, and the node index.

MiniC scoping is deliberately flat: functions and global constants share one
program-wide namespace, locals are function-scoped (one declaration per name,
no shadowing of params, consts, or functions). Builtin names are reserved.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from forge.errors import LinkError
from forge.lang import ast


@dataclass
class Program:
    modules: list[ast.Module]
    entry: str
    functions: dict[str, ast.FuncDecl]
    consts: dict[str, int]
    func_file: dict[str, str]  # function name -> source path
    expr_types: dict[int, str]  # node_id -> "int" | "buf"
    var_types: dict[tuple[str, str], str]  # (function, var) -> type
    nodes: dict[int, ast.Node] = field(default_factory=dict)
    file_paths: dict[int, str] = field(default_factory=dict)

    def file_of(self, node_id: int) -> str:
        return self.file_paths[ast.node_file_id(node_id)]

    def module_of_function(self, name: str) -> ast.Module:
        path = self.func_file[name]
        for m in self.modules:
            if m.path == path:
                return m
        raise KeyError(name)


def _loc(program_path: str, node: ast.Node) -> tuple[str, int]:
    return program_path, node.span.start_line


class _Checker:
    def __init__(self, modules: list[ast.Module], entry: str):
        self.modules = modules
        self.entry = entry
        self.functions: dict[str, ast.FuncDecl] = {}
        self.consts: dict[str, int] = {}
        self.func_file: dict[str, str] = {}
        self.const_file: dict[str, str] = {}
        self.expr_types: dict[int, str] = {}
        self.var_types: dict[tuple[str, str], str] = {}

    def check(self) -> Program:
        self._collect_globals()
        for module in self.modules:
            for func in module.functions:
                self._check_function(module, func)
        self._check_entry()
        nodes = {}
        file_paths = {}
        for module in self.modules:
            file_paths[module.file_id] = module.path
            for node in ast.iter_nodes(module):
                nodes[node.node_id] = node
        return Program(
            modules=self.modules,
            entry=self.entry,
            functions=self.functions,
            consts=self.consts,
            func_file=self.func_file,
            expr_types=self.expr_types,
            var_types=self.var_types,
            nodes=nodes,
            file_paths=file_paths,
        )

    def _collect_globals(self) -> None:
        for module in self.modules:
            for item in module.items:
                name = item.name  # type: ignore[attr-defined]
                if name in ast.BUILTIN_ARITY:
                    raise LinkError(f"{name!r} is a reserved builtin name", module.path, item.span.start_line)
                if name in self.functions or name in self.consts:
                    raise LinkError(f"duplicate global name {name!r}", module.path, item.span.start_line)
                if isinstance(item, ast.FuncDecl):
                    self.functions[name] = item
                    self.func_file[name] = module.path
                else:
                    assert isinstance(item, ast.ConstDecl)
                    self.consts[name] = item.value
                    self.const_file[name] = module.path

    def _check_entry(self) -> None:
        entry = self.functions.get(self.entry)
        if entry is None:
            raise LinkError(f"entry function {self.entry!r} is missing")
        if entry.params:
            raise LinkError(f"entry function {self.entry!r} must take no parameters", self.func_file[self.entry])
        if entry.ret_type != ast.INT_TYPE:
            raise LinkError(f"entry function {self.entry!r} must return int", self.func_file[self.entry])

    def _check_function(self, module: ast.Module, func: ast.FuncDecl) -> None:
        scope: dict[str, str] = {}
        for param in func.params:
            self._check_fresh(module, func, param.name, param)
            scope[param.name] = param.type
            self.var_types[(func.name, param.name)] = param.type
        self._check_block(module, func, func.body, scope)

    def _check_fresh(self, module: ast.Module, func: ast.FuncDecl, name: str, node: ast.Node) -> None:
        if name in ast.BUILTIN_ARITY or name in self.functions or name in self.consts:
            raise LinkError(
                f"{name!r} shadows a global or builtin in {func.name!r}", module.path, node.span.start_line
            )
        if (func.name, name) in self.var_types:
            raise LinkError(f"duplicate declaration of {name!r} in {func.name!r}", module.path, node.span.start_line)

    def _check_block(self, module: ast.Module, func: ast.FuncDecl, block: ast.Block, scope: dict[str, str]) -> None:
        for stmt in block.statements:
            self._check_stmt(module, func, stmt, scope)

    def _check_stmt(self, module: ast.Module, func: ast.FuncDecl, stmt: ast.Node, scope: dict[str, str]) -> None:
        path = module.path
        if isinstance(stmt, ast.LetStmt):
            value_type = self._type_expr(module, func, stmt.value, scope)
            self._check_fresh(module, func, stmt.name, stmt)
            scope[stmt.name] = value_type
            self.var_types[(func.name, stmt.name)] = value_type
        elif isinstance(stmt, ast.AssignStmt):
            value_type = self._type_expr(module, func, stmt.value, scope)
            if stmt.name not in scope:
                raise LinkError(f"assignment to undeclared variable {stmt.name!r}", path, stmt.span.start_line)
            if scope[stmt.name] != value_type:
                raise LinkError(
                    f"type mismatch assigning {value_type} to {scope[stmt.name]} variable {stmt.name!r}",
                    path,
                    stmt.span.start_line,
                )
        elif isinstance(stmt, ast.IndexAssign):
            base_type = self._type_expr(module, func, stmt.base, scope)
            if base_type != ast.BUF_TYPE:
                raise LinkError("indexed assignment requires a buffer", path, stmt.span.start_line)
            self._expect_int(module, func, stmt.index, scope, "buffer index")
            self._expect_int(module, func, stmt.value, scope, "stored value")
        elif isinstance(stmt, ast.IfStmt):
            self._expect_int(module, func, stmt.cond, scope, "condition")
            self._check_block(module, func, stmt.then_block, scope)
            if stmt.else_block is not None:
                self._check_block(module, func, stmt.else_block, scope)
        elif isinstance(stmt, ast.WhileStmt):
            self._expect_int(module, func, stmt.cond, scope, "condition")
            self._check_block(module, func, stmt.body, scope)
        elif isinstance(stmt, ast.ReturnStmt):
            value_type = self._type_expr(module, func, stmt.value, scope)
            if value_type != func.ret_type:
                raise LinkError(
                    f"{func.name!r} returns {value_type}, declared {func.ret_type}", path, stmt.span.start_line
                )
        elif isinstance(stmt, ast.ExprStmt):
            self._type_expr(module, func, stmt.expr, scope)
        else:
            raise LinkError(f"unexpected statement node {type(stmt).__name__}", path)

    def _expect_int(self, module, func, expr: ast.Node, scope, what: str) -> None:
        t = self._type_expr(module, func, expr, scope)
        if t != ast.INT_TYPE:
            raise LinkError(f"{what} must be int, found {t}", module.path, expr.span.start_line)

    def _type_expr(self, module: ast.Module, func: ast.FuncDecl, expr: ast.Node, scope: dict[str, str]) -> str:
        path = module.path
        t: str
        if isinstance(expr, ast.IntLit):
            t = ast.INT_TYPE
        elif isinstance(expr, ast.VarRef):
            if expr.name in scope:
                t = scope[expr.name]
            elif expr.name in self.consts:
                t = ast.INT_TYPE
            else:
                raise LinkError(f"undeclared identifier {expr.name!r}", path, expr.span.start_line)
        elif isinstance(expr, ast.UnaryOp):
            self._expect_int(module, func, expr.operand, scope, f"operand of {expr.op!r}")
            t = ast.INT_TYPE
        elif isinstance(expr, ast.BinOp):
            self._expect_int(module, func, expr.left, scope, f"operand of {expr.op!r}")
            self._expect_int(module, func, expr.right, scope, f"operand of {expr.op!r}")
            t = ast.INT_TYPE
        elif isinstance(expr, ast.IndexExpr):
            base_type = self._type_expr(module, func, expr.base, scope)
            if base_type != ast.BUF_TYPE:
                raise LinkError("indexing requires a buffer", path, expr.span.start_line)
            self._expect_int(module, func, expr.index, scope, "buffer index")
            t = ast.INT_TYPE
        elif isinstance(expr, ast.CallExpr):
            t = self._type_call(module, func, expr, scope)
        else:
            raise LinkError(f"unexpected expression node {type(expr).__name__}", path)
        self.expr_types[expr.node_id] = t
        return t

    def _type_call(self, module: ast.Module, func: ast.FuncDecl, call: ast.CallExpr, scope: dict[str, str]) -> str:
        path = module.path
        name = call.name
        if name in ast.BUILTIN_ARITY:
            arity = ast.BUILTIN_ARITY[name]
            if len(call.args) != arity:
                raise LinkError(
                    f"builtin {name!r} takes {arity} argument(s), got {len(call.args)}", path, call.span.start_line
                )
            if name == "len":
                arg_type = self._type_expr(module, func, call.args[0], scope)
                if arg_type != ast.BUF_TYPE:
                    raise LinkError("len() requires a buffer", path, call.span.start_line)
                return ast.INT_TYPE
            for arg in call.args:
                self._expect_int(module, func, arg, scope, f"argument of {name!r}")
            return ast.BUF_TYPE if name in ("read_buf", "alloc") else ast.INT_TYPE
        target = self.functions.get(name)
        if target is None:
            raise LinkError(f"call to undeclared function {name!r}", path, call.span.start_line)
        if len(call.args) != len(target.params):
            raise LinkError(
                f"{name!r} takes {len(target.params)} argument(s), got {len(call.args)}",
                path,
                call.span.start_line,
            )
        for arg, param in zip(call.args, target.params):
            arg_type = self._type_expr(module, func, arg, scope)
            if arg_type != param.type:
                raise LinkError(
                    f"argument {param.name!r} of {name!r} expects {param.type}, got {arg_type}",
                    path,
                    arg.span.start_line,
                )
        return target.ret_type


def link(modules: list[ast.Module], entry: str = "main") -> Program:
    """Resolve and type-check a set of parsed modules into a runnable program."""
    return _Checker(modules, entry).check()
