"""Tree-walking MiniC interpreter with runtime safety checks.

Execution semantics pinned here (see docs/semantics.md):
  * integers are signed 64-bit; any arithmetic result outside the range traps
    as OVERFLOW (including unary negation of INT64_MIN and INT64_MIN / -1,
    and conservatively INT64_MIN % -1);
  * `/` and `%` follow truncated division (C-style): the quotient truncates
    toward zero and the remainder takes the dividend's sign; a zero
    denominator traps as DIV_ZERO;
  * `&&` / `||` short-circuit and yield 1 or 0; comparisons yield 1 or 0;
    any nonzero value is true in conditions;
  * buffers are zero-filled reference values; index reads/writes outside
    [0, len) trap as OOB_READ / OOB_WRITE; alloc(n) and read_buf(n) with
    n < 0 trap as ALLOC_NEG;
  * read_int()/read_buf(n) consume the input sequence in order; consuming
    past its end ends the run with INPUT_EXHAUSTED (not a crash);
  * call depth beyond the limit traps as CALL_DEPTH; exceeding the step
    budget ends the run with STEP_LIMIT;
  * falling off the end of a function returns 0.

Every run is a pure function of (program, input, limits): results, coverage
sets, and step counts are byte-identical across repeated runs.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum

from forge.lang import ast
from forge.lang.linker import Program
from forge.util import INT64_MAX, INT64_MIN, digest64


class RunStatus(str, Enum):
    OK = "OK"
    CRASH = "CRASH"
    INPUT_EXHAUSTED = "INPUT_EXHAUSTED"
    STEP_LIMIT = "STEP_LIMIT"
    EXPLICIT_ABORT = "EXPLICIT_ABORT"


class CrashKind(str, Enum):
    OOB_READ = "OOB_READ"
    OOB_WRITE = "OOB_WRITE"
    OVERFLOW = "OVERFLOW"
    DIV_ZERO = "DIV_ZERO"
    ALLOC_NEG = "ALLOC_NEG"
    CALL_DEPTH = "CALL_DEPTH"


@dataclass(frozen=True, slots=True)
class CrashSignature:
    kind: CrashKind
    function: str
    file: str
    line: int
    stack_digest: int

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "function": self.function,
            "file": self.file,
            "line": self.line,
            "stack_digest": self.stack_digest,
        }

    @staticmethod
    def from_dict(d: dict) -> "CrashSignature":
        return CrashSignature(
            kind=CrashKind(d["kind"]),
            function=d["function"],
            file=d["file"],
            line=int(d["line"]),
            stack_digest=int(d["stack_digest"]),
        )


def stack_digest(stack: list[tuple[str, int]]) -> int:
    """Digest over the ordered (function, line) call stack."""
    raw = "\x1f".join(f"{fn}:{line}" for fn, line in stack).encode("utf-8")
    return digest64(raw)


@dataclass(frozen=True, slots=True)
class Limits:
    max_steps: int = 1_000_000
    max_call_depth: int = 256


@dataclass(frozen=True)
class ExecutionResult:
    status: RunStatus
    outputs: tuple[str, ...]
    violation: CrashSignature | None
    coverage: frozenset[tuple[int, bool]]
    steps_used: int
    # Full call path at the crash point, (function, line) from entry to crash.
    # Deterministic like everything else; None unless status is CRASH.
    crash_stack: tuple[tuple[str, int], ...] | None = None

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "outputs": list(self.outputs),
            "violation": self.violation.to_dict() if self.violation else None,
            "coverage": sorted([nid, taken] for nid, taken in self.coverage),
            "steps_used": self.steps_used,
        }


class _Buffer:
    """Sparse zero-filled int buffer; huge alloc sizes cost no memory."""

    __slots__ = ("length", "cells")

    def __init__(self, length: int):
        self.length = length
        self.cells: dict[int, int] = {}

    def get(self, i: int) -> int:
        return self.cells.get(i, 0)

    def set(self, i: int, v: int) -> None:
        self.cells[i] = v


class _Crash(Exception):
    def __init__(self, kind: CrashKind, node: ast.Node):
        self.kind = kind
        self.node = node


class _Abort(Exception):
    pass


class _InputExhausted(Exception):
    pass


class _StepLimit(Exception):
    pass


class _Return(Exception):
    def __init__(self, value):
        self.value = value


class _Frame:
    __slots__ = ("function", "locals", "active_line")

    def __init__(self, function: str, active_line: int):
        self.function = function
        self.locals: dict[str, object] = {}
        self.active_line = active_line


class Interpreter:
    def __init__(self, program: Program, limits: Limits = Limits()):
        self.program = program
        self.limits = limits

    def run(self, input_values: list[int]) -> ExecutionResult:
        if self.limits.max_call_depth < 1 or self.limits.max_steps < 1:
            raise ValueError("limits must be positive")
        self.input = input_values
        self.input_pos = 0
        self.outputs: list[str] = []
        self.coverage: set[tuple[int, bool]] = set()
        self.steps = 0
        self.frames: list[_Frame] = []

        entry = self.program.functions[self.program.entry]
        self._call_node: ast.Node = entry
        old_limit = sys.getrecursionlimit()
        # Each MiniC frame costs a bounded number of Python frames.
        sys.setrecursionlimit(max(old_limit, 2000 + 64 * self.limits.max_call_depth))
        try:
            status = RunStatus.OK
            violation = None
            crash_stack = None
            try:
                self._call(entry, [], entry.span.start_line)
            except _Crash as crash:
                status = RunStatus.CRASH
                node = crash.node
                line = node.span.start_line
                stack = [(fr.function, fr.active_line) for fr in self.frames[:-1]]
                stack.append((self.frames[-1].function, line))
                violation = CrashSignature(
                    kind=crash.kind,
                    function=self.frames[-1].function,
                    file=self.program.file_of(node.node_id),
                    line=line,
                    stack_digest=stack_digest(stack),
                )
                crash_stack = tuple(stack)
            except _Abort:
                status = RunStatus.EXPLICIT_ABORT
            except _InputExhausted:
                status = RunStatus.INPUT_EXHAUSTED
            except _StepLimit:
                status = RunStatus.STEP_LIMIT
            return ExecutionResult(
                status=status,
                outputs=tuple(self.outputs),
                violation=violation,
                coverage=frozenset(self.coverage),
                steps_used=self.steps,
                crash_stack=crash_stack,
            )
        finally:
            sys.setrecursionlimit(old_limit)

    # -- execution ---------------------------------------------------------

    def _step(self) -> None:
        self.steps += 1
        if self.steps > self.limits.max_steps:
            raise _StepLimit()

    def _call(self, func: ast.FuncDecl, args: list[object], call_line: int):
        if len(self.frames) + 1 > self.limits.max_call_depth:
            raise _Crash(CrashKind.CALL_DEPTH, self._call_node)
        frame = _Frame(func.name, call_line)
        for param, arg in zip(func.params, args):
            frame.locals[param.name] = arg
        self.frames.append(frame)
        try:
            self._exec_block(func.body)
            return 0
        except _Return as ret:
            return ret.value
        finally:
            self.frames.pop()

    def _exec_block(self, block: ast.Block) -> None:
        for stmt in block.statements:
            self._exec_stmt(stmt)

    def _exec_stmt(self, stmt: ast.Node) -> None:
        # (node_id, True) marks the statement as reached; if/while additionally
        # record (node_id, False) whenever their condition evaluates false.
        self.coverage.add((stmt.node_id, True))
        self._step()
        frame = self.frames[-1]
        frame.active_line = stmt.span.start_line
        if isinstance(stmt, ast.LetStmt):
            frame.locals[stmt.name] = self._eval(stmt.value)
        elif isinstance(stmt, ast.AssignStmt):
            frame.locals[stmt.name] = self._eval(stmt.value)
        elif isinstance(stmt, ast.IndexAssign):
            buf = self._eval(stmt.base)
            index = self._eval(stmt.index)
            value = self._eval(stmt.value)
            assert isinstance(buf, _Buffer)
            if not (0 <= index < buf.length):
                raise _Crash(CrashKind.OOB_WRITE, stmt)
            buf.set(index, value)
        elif isinstance(stmt, ast.IfStmt):
            taken = self._eval(stmt.cond) != 0
            if taken:
                self._exec_block(stmt.then_block)
            else:
                self.coverage.add((stmt.node_id, False))
                if stmt.else_block is not None:
                    self._exec_block(stmt.else_block)
        elif isinstance(stmt, ast.WhileStmt):
            while True:
                frame.active_line = stmt.span.start_line
                taken = self._eval(stmt.cond) != 0
                if not taken:
                    self.coverage.add((stmt.node_id, False))
                    break
                self._exec_block(stmt.body)
                self._step()
        elif isinstance(stmt, ast.ReturnStmt):
            raise _Return(self._eval(stmt.value))
        elif isinstance(stmt, ast.ExprStmt):
            self._eval(stmt.expr)
        else:
            raise TypeError(f"unexpected statement {type(stmt).__name__}")

    def _check_range(self, value: int, node: ast.Node) -> int:
        if not (INT64_MIN <= value <= INT64_MAX):
            raise _Crash(CrashKind.OVERFLOW, node)
        return value

    def _eval(self, expr: ast.Node):
        self._step()
        if isinstance(expr, ast.IntLit):
            return expr.value
        if isinstance(expr, ast.VarRef):
            frame = self.frames[-1]
            if expr.name in frame.locals:
                return frame.locals[expr.name]
            return self.program.consts[expr.name]
        if isinstance(expr, ast.BinOp):
            return self._eval_binop(expr)
        if isinstance(expr, ast.UnaryOp):
            operand = self._eval(expr.operand)
            if expr.op == "-":
                return self._check_range(-operand, expr)
            return 1 if operand == 0 else 0
        if isinstance(expr, ast.IndexExpr):
            buf = self._eval(expr.base)
            index = self._eval(expr.index)
            assert isinstance(buf, _Buffer)
            if not (0 <= index < buf.length):
                raise _Crash(CrashKind.OOB_READ, expr)
            return buf.get(index)
        if isinstance(expr, ast.CallExpr):
            return self._eval_call(expr)
        raise TypeError(f"unexpected expression {type(expr).__name__}")

    def _eval_binop(self, expr: ast.BinOp):
        op = expr.op
        if op == "&&":
            if self._eval(expr.left) == 0:
                return 0
            return 1 if self._eval(expr.right) != 0 else 0
        if op == "||":
            if self._eval(expr.left) != 0:
                return 1
            return 1 if self._eval(expr.right) != 0 else 0
        left = self._eval(expr.left)
        right = self._eval(expr.right)
        if op == "+":
            return self._check_range(left + right, expr)
        if op == "-":
            return self._check_range(left - right, expr)
        if op == "*":
            return self._check_range(left * right, expr)
        if op in ("/", "%"):
            if right == 0:
                raise _Crash(CrashKind.DIV_ZERO, expr)
            if left == INT64_MIN and right == -1:
                raise _Crash(CrashKind.OVERFLOW, expr)
            quotient = abs(left) // abs(right)
            if (left < 0) != (right < 0):
                quotient = -quotient
            if op == "/":
                return quotient
            return left - quotient * right
        if op == "==":
            return 1 if left == right else 0
        if op == "!=":
            return 1 if left != right else 0
        if op == "<":
            return 1 if left < right else 0
        if op == "<=":
            return 1 if left <= right else 0
        if op == ">":
            return 1 if left > right else 0
        if op == ">=":
            return 1 if left >= right else 0
        raise TypeError(f"unexpected operator {op}")

    def _eval_call(self, call: ast.CallExpr):
        name = call.name
        if name == "read_int":
            if self.input_pos >= len(self.input):
                raise _InputExhausted()
            value = self.input[self.input_pos]
            self.input_pos += 1
            return value
        if name == "read_buf":
            n = self._eval(call.args[0])
            if n < 0:
                raise _Crash(CrashKind.ALLOC_NEG, call)
            if self.input_pos + n > len(self.input):
                raise _InputExhausted()
            buf = _Buffer(n)
            for i in range(n):
                buf.set(i, self.input[self.input_pos + i])
            self.input_pos += n
            return buf
        if name == "alloc":
            n = self._eval(call.args[0])
            if n < 0:
                raise _Crash(CrashKind.ALLOC_NEG, call)
            return _Buffer(n)
        if name == "len":
            buf = self._eval(call.args[0])
            assert isinstance(buf, _Buffer)
            return buf.length
        if name == "print":
            value = self._eval(call.args[0])
            self.outputs.append(str(value))
            return 0
        if name == "abort":
            self._eval(call.args[0])
            raise _Abort()
        func = self.program.functions[name]
        args = [self._eval(arg) for arg in call.args]
        self.frames[-1].active_line = call.span.start_line
        self._call_node = call
        return self._call(func, args, call.span.start_line)


def run(program: Program, input_values: list[int], limits: Limits = Limits()) -> ExecutionResult:
    """Execute a linked program on an input sequence."""
    return Interpreter(program, limits).run(input_values)
