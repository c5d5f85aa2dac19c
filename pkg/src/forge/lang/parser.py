"""Recursive-descent parser for MiniC.

Grammar lives in docs/grammar.ebnf. The parser performs purely syntactic
checks plus in-file duplicate detection; cross-file resolution, typing, and
arity checks happen at link time.
"""

from __future__ import annotations

from forge.errors import ParseError
from forge.lang import ast
from forge.lang.lexer import Token, tokenize


class _Parser:
    def __init__(self, tokens: list[Token], path: str, file_id: int):
        self.tokens = tokens
        self.pos = 0
        self.path = path
        self.file_id = file_id

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.path, tok.line, tok.col)

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = text if text is not None else kind
            got = tok.text if tok.text else "end of file"
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    def accept(self, kind: str, text: str) -> bool:
        tok = self.peek()
        if tok.kind == kind and tok.text == text:
            self.pos += 1
            return True
        return False

    def _start(self, tok: Token) -> tuple[int, int]:
        return tok.line, tok.col

    def _finish(self, node: ast.Node, start: tuple[int, int], end_tok: Token) -> ast.Node:
        end_col = end_tok.col + max(len(end_tok.text) - 1, 0)
        node.span = ast.Span(self.file_id, start[0], start[1], end_tok.line, end_col)
        return node

    def last(self) -> Token:
        return self.tokens[self.pos - 1]

    # -- items ---------------------------------------------------------------

    def parse_module(self) -> ast.Module:
        items: list[ast.Node] = []
        seen: dict[str, str] = {}
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.kind == "kw" and tok.text == "fn":
                item = self.parse_function()
            elif tok.kind == "kw" and tok.text == "const":
                item = self.parse_const()
            else:
                raise self.error("expected 'fn' or 'const' at top level")
            name = item.name  # type: ignore[attr-defined]
            if name in seen:
                raise ParseError(
                    f"duplicate top-level name {name!r}",
                    self.path,
                    item.span.start_line,
                    item.span.start_col,
                )
            seen[name] = "item"
            items.append(item)
        return ast.Module(self.path, self.file_id, items, [])

    def parse_const(self) -> ast.ConstDecl:
        start = self._start(self.expect("kw", "const"))
        name = self.expect("ident").text
        self.expect("op", "=")
        negative = self.accept("op", "-")
        value_tok = self.expect("int")
        value = -int(value_tok.text) if negative else int(value_tok.text)
        end = self.expect("op", ";")
        node = ast.ConstDecl(name, value)
        return self._finish(node, start, end)  # type: ignore[return-value]

    def parse_function(self) -> ast.FuncDecl:
        start = self._start(self.expect("kw", "fn"))
        name = self.expect("ident").text
        self.expect("op", "(")
        params: list[ast.Param] = []
        seen: set[str] = set()
        if not self.accept("op", ")"):
            while True:
                ptok = self.expect("ident")
                self.expect("op", ":")
                ptype = self.parse_type()
                if ptok.text in seen:
                    raise ParseError(f"duplicate parameter {ptok.text!r}", self.path, ptok.line, ptok.col)
                seen.add(ptok.text)
                param = ast.Param(ptok.text, ptype)
                self._finish(param, (ptok.line, ptok.col), self.last())
                params.append(param)
                if self.accept("op", ")"):
                    break
                self.expect("op", ",")
        self.expect("op", "->")
        ret_type = self.parse_type()
        body = self.parse_block()
        node = ast.FuncDecl(name, params, ret_type, body)
        return self._finish(node, start, self.last())  # type: ignore[return-value]

    def parse_type(self) -> str:
        tok = self.peek()
        if tok.kind == "kw" and tok.text in (ast.INT_TYPE, ast.BUF_TYPE):
            self.advance()
            return tok.text
        raise self.error("expected type 'int' or 'buf'")

    # -- statements ----------------------------------------------------------

    def parse_block(self) -> ast.Block:
        start = self._start(self.expect("op", "{"))
        stmts: list[ast.Node] = []
        while not self.accept("op", "}"):
            if self.peek().kind == "eof":
                raise self.error("unterminated block")
            stmts.append(self.parse_statement())
        node = ast.Block(stmts)
        return self._finish(node, start, self.last())  # type: ignore[return-value]

    def parse_statement(self) -> ast.Node:
        tok = self.peek()
        if tok.kind == "kw":
            if tok.text == "let":
                return self.parse_let()
            if tok.text == "if":
                return self.parse_if()
            if tok.text == "while":
                return self.parse_while()
            if tok.text == "return":
                return self.parse_return()
        return self.parse_expr_or_assign()

    def parse_let(self) -> ast.Node:
        start = self._start(self.expect("kw", "let"))
        name = self.expect("ident").text
        self.expect("op", "=")
        value = self.parse_expr()
        end = self.expect("op", ";")
        return self._finish(ast.LetStmt(name, value), start, end)

    def parse_if(self) -> ast.Node:
        start = self._start(self.expect("kw", "if"))
        self.expect("op", "(")
        cond = self.parse_expr()
        self.expect("op", ")")
        then_block = self.parse_block()
        else_block = None
        if self.accept("kw", "else"):
            else_block = self.parse_block()
        return self._finish(ast.IfStmt(cond, then_block, else_block), start, self.last())

    def parse_while(self) -> ast.Node:
        start = self._start(self.expect("kw", "while"))
        self.expect("op", "(")
        cond = self.parse_expr()
        self.expect("op", ")")
        body = self.parse_block()
        return self._finish(ast.WhileStmt(cond, body), start, self.last())

    def parse_return(self) -> ast.Node:
        start = self._start(self.expect("kw", "return"))
        value = self.parse_expr()
        end = self.expect("op", ";")
        return self._finish(ast.ReturnStmt(value), start, end)

    def parse_expr_or_assign(self) -> ast.Node:
        start_tok = self.peek()
        expr = self.parse_expr()
        if self.accept("op", "="):
            value = self.parse_expr()
            end = self.expect("op", ";")
            start = (start_tok.line, start_tok.col)
            if isinstance(expr, ast.VarRef):
                return self._finish(ast.AssignStmt(expr.name, value), start, end)
            if isinstance(expr, ast.IndexExpr) and isinstance(expr.base, ast.VarRef):
                return self._finish(ast.IndexAssign(expr.base, expr.index, value), start, end)
            raise ParseError(
                "assignment target must be a variable or indexed variable",
                self.path,
                start_tok.line,
                start_tok.col,
            )
        end = self.expect("op", ";")
        return self._finish(ast.ExprStmt(expr), (start_tok.line, start_tok.col), end)

    # -- expressions -----------------------------------------------------------

    def parse_expr(self) -> ast.Node:
        return self.parse_or()

    def _binop_chain(self, sub, ops: tuple[str, ...]) -> ast.Node:
        left = sub()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in ops:
                self.advance()
                right = sub()
                node = ast.BinOp(tok.text, left, right)
                node.span = ast.Span(
                    self.file_id,
                    left.span.start_line,
                    left.span.start_col,
                    right.span.end_line,
                    right.span.end_col,
                )
                left = node
            else:
                return left

    def parse_or(self) -> ast.Node:
        return self._binop_chain(self.parse_and, ("||",))

    def parse_and(self) -> ast.Node:
        return self._binop_chain(self.parse_cmp, ("&&",))

    def parse_cmp(self) -> ast.Node:
        left = self.parse_sum()
        tok = self.peek()
        if tok.kind == "op" and tok.text in ast.CMP_OPS:
            self.advance()
            right = self.parse_sum()
            node = ast.BinOp(tok.text, left, right)
            node.span = ast.Span(
                self.file_id,
                left.span.start_line,
                left.span.start_col,
                right.span.end_line,
                right.span.end_col,
            )
            return node
        return left

    def parse_sum(self) -> ast.Node:
        return self._binop_chain(self.parse_term, ("+", "-"))

    def parse_term(self) -> ast.Node:
        return self._binop_chain(self.parse_unary, ("*", "/", "%"))

    def parse_unary(self) -> ast.Node:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("-", "!"):
            self.advance()
            operand = self.parse_unary()
            node = ast.UnaryOp(tok.text, operand)
            node.span = ast.Span(
                self.file_id, tok.line, tok.col, operand.span.end_line, operand.span.end_col
            )
            return node
        return self.parse_postfix()

    def parse_postfix(self) -> ast.Node:
        expr = self.parse_primary()
        while self.peek().kind == "op" and self.peek().text == "[":
            self.advance()
            index = self.parse_expr()
            end = self.expect("op", "]")
            node = ast.IndexExpr(expr, index)
            node.span = ast.Span(
                self.file_id,
                expr.span.start_line,
                expr.span.start_col,
                end.line,
                end.col,
            )
            expr = node
        return expr

    def parse_primary(self) -> ast.Node:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            node = ast.IntLit(int(tok.text))
            return self._finish(node, (tok.line, tok.col), tok)
        if tok.kind == "ident":
            self.advance()
            if self.peek().kind == "op" and self.peek().text == "(":
                self.advance()
                args: list[ast.Node] = []
                if not self.accept("op", ")"):
                    while True:
                        args.append(self.parse_expr())
                        if self.accept("op", ")"):
                            break
                        self.expect("op", ",")
                node = ast.CallExpr(tok.text, args)
                return self._finish(node, (tok.line, tok.col), self.last())
            node = ast.VarRef(tok.text)
            return self._finish(node, (tok.line, tok.col), tok)
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            expr = self.parse_expr()
            self.expect("op", ")")
            return expr
        raise self.error("expected expression")


def parse_file(source: str, path: str, file_id: int) -> ast.Module:
    """Parse one MiniC source file into a module with stable node ids."""
    tokens, comments = tokenize(source, path)
    parser = _Parser(tokens, path, file_id)
    module = parser.parse_module()
    module.comments = comments
    ast.assign_node_ids(module)
    return module
