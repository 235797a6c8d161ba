"""Complete deterministic finite automata: minimization, isomorphism, formats.

Automata here are always complete.  A rejecting absorbing state, when one
exists, is tracked as `dead`; reported "state counts" elsewhere in the
package exclude it unless said otherwise.
"""

from __future__ import annotations

import json
from collections import deque
from typing import Iterable

from .words import Word


class Dfa:
    """A complete DFA over the alphabet {0, ..., alphabet_size - 1}.

    delta[q][a] is the successor of state q under symbol a.  `dead`, when
    not None, must be non-accepting with every transition a self-loop.
    """

    __slots__ = ("delta", "start", "accepting", "dead", "alphabet_size")

    def __init__(self, delta, start: int, accepting: Iterable[int],
                 dead: int | None = None, alphabet_size: int | None = None):
        delta = tuple(tuple(row) for row in delta)
        n = len(delta)
        if alphabet_size is None:
            alphabet_size = len(delta[0]) if n else 0
        accepting = frozenset(accepting)
        if not (0 <= start < n):
            raise ValueError(f"start state {start} out of range")
        for q, row in enumerate(delta):
            if len(row) != alphabet_size:
                raise ValueError(f"state {q} has {len(row)} transitions, want {alphabet_size}")
            for t in row:
                if not (0 <= t < n):
                    raise ValueError(f"transition {q} -> {t} out of range")
        if dead is not None:
            if dead in accepting:
                raise ValueError("dead state must be rejecting")
            if any(t != dead for t in delta[dead]):
                raise ValueError("dead state transitions must self-loop")
        self.delta = delta
        self.start = start
        self.accepting = accepting
        self.dead = dead
        self.alphabet_size = alphabet_size

    @property
    def state_count(self) -> int:
        return len(self.delta)

    def live_state_count(self) -> int:
        """States excluding the dead state — the count conventions use this."""
        return len(self.delta) - (1 if self.dead is not None else 0)

    def step(self, q: int, a: int) -> int:
        return self.delta[q][a]

    def run(self, q: int, w) -> int:
        delta = self.delta
        for a in _symbols(w):
            q = delta[q][a]
        return q

    def accepts(self, w) -> bool:
        return self.run(self.start, w) in self.accepting

    def __eq__(self, other) -> bool:
        return (isinstance(other, Dfa)
                and self.delta == other.delta
                and self.start == other.start
                and self.accepting == other.accepting
                and self.dead == other.dead)

    def __hash__(self):
        return hash((self.delta, self.start, self.accepting, self.dead))

    def __repr__(self):
        return (f"Dfa(states={self.state_count}, alphabet={self.alphabet_size}, "
                f"accepting={len(self.accepting)}, dead={self.dead})")


def _symbols(w) -> tuple[int, ...]:
    if isinstance(w, Word):
        return w.symbols
    return tuple(w)


def _reachable(d: Dfa) -> list[int]:
    seen = [False] * d.state_count
    seen[d.start] = True
    order = [d.start]
    queue = deque((d.start,))
    while queue:
        q = queue.popleft()
        for t in d.delta[q]:
            if not seen[t]:
                seen[t] = True
                order.append(t)
                queue.append(t)
    return order


def _hopcroft(delta, k: int, n: int, accepting) -> list[int]:
    """Hopcroft partition refinement; returns the block id of each state."""
    inv = [[[] for _ in range(n)] for _ in range(k)]
    for p in range(n):
        row = delta[p]
        for a in range(k):
            inv[a][row[a]].append(p)

    final = set(q for q in accepting)
    nonfinal = set(range(n)) - final
    blocks: list[set[int]] = []
    block_of = [0] * n
    for s in (final, nonfinal):
        if s:
            idx = len(blocks)
            blocks.append(s)
            for q in s:
                block_of[q] = idx

    work: deque[tuple[int, int]] = deque()
    in_work: set[tuple[int, int]] = set()
    seed = min(range(len(blocks)), key=lambda i: len(blocks[i]))
    for a in range(k):
        work.append((seed, a))
        in_work.add((seed, a))

    while work:
        i, c = work.popleft()
        in_work.discard((i, c))
        splitter = blocks[i]
        # states whose c-successor lands in the splitter
        hits: dict[int, list[int]] = {}
        invc = inv[c]
        for q in splitter:
            for p in invc[q]:
                j = block_of[p]
                bucket = hits.get(j)
                if bucket is None:
                    hits[j] = [p]
                else:
                    bucket.append(p)
        for j, part in hits.items():
            blk = blocks[j]
            moved = set(part)
            if len(moved) == len(blk):
                continue
            blk -= moved
            new_idx = len(blocks)
            blocks.append(moved)
            for q in moved:
                block_of[q] = new_idx
            small = j if len(blk) <= len(moved) else new_idx
            for a in range(k):
                if (j, a) in in_work:
                    work.append((new_idx, a))
                    in_work.add((new_idx, a))
                else:
                    work.append((small, a))
                    in_work.add((small, a))
    return block_of


def _canonical_renumber(delta, k: int, start: int, accepting) -> tuple:
    """BFS renumbering from the start with ascending symbols; returns the new parts."""
    order = {start: 0}
    seq = [start]
    queue = deque((start,))
    while queue:
        q = queue.popleft()
        for a in range(k):
            t = delta[q][a]
            if t not in order:
                order[t] = len(order)
                seq.append(t)
                queue.append(t)
    new_delta = tuple(tuple(order[delta[q][a]] for a in range(k)) for q in seq)
    new_accepting = frozenset(order[q] for q in accepting if q in order)
    return new_delta, 0, new_accepting


def _find_dead(delta, accepting) -> int | None:
    cands = [q for q, row in enumerate(delta)
             if q not in accepting and all(t == q for t in row)]
    return cands[0] if cands else None


def minimize(d: Dfa) -> Dfa:
    """The unique minimal complete DFA for L(d), canonically numbered."""
    order = _reachable(d)
    remap = {q: i for i, q in enumerate(order)}
    n = len(order)
    k = d.alphabet_size
    delta = [tuple(remap[d.delta[q][a]] for a in range(k)) for q in order]
    accepting = set(remap[q] for q in d.accepting if q in remap)

    block_of = _hopcroft(delta, k, n, accepting)
    blocks = sorted(set(block_of))
    bmap = {b: i for i, b in enumerate(blocks)}
    rep: dict[int, int] = {}
    for q in range(n):
        rep.setdefault(bmap[block_of[q]], q)
    m = len(blocks)
    mdelta = [tuple(bmap[block_of[delta[rep[b]][a]]] for a in range(k)) for b in range(m)]
    maccept = set(bmap[block_of[q]] for q in accepting)
    mstart = bmap[block_of[remap[d.start]]]

    cdelta, cstart, caccept = _canonical_renumber(mdelta, k, mstart, maccept)
    dead = _find_dead(cdelta, caccept)
    return Dfa(cdelta, cstart, caccept, dead, k)


def isomorphic(a: Dfa, b: Dfa) -> bool:
    """Whether two minimized DFAs are the same up to renumbering."""
    if a.alphabet_size != b.alphabet_size or a.state_count != b.state_count:
        return False
    ka = _canonical_renumber(a.delta, a.alphabet_size, a.start, a.accepting)
    kb = _canonical_renumber(b.delta, b.alphabet_size, b.start, b.accepting)
    return ka == kb


def export_dfa(d: Dfa, fmt: str = "grail") -> str:
    if fmt == "grail":
        lines = [f"(START) |- {d.start}"]
        for q, row in enumerate(d.delta):
            for a, t in enumerate(row):
                lines.append(f"{q} {a} {t}")
        for q in sorted(d.accepting):
            lines.append(f"{q} -| (FINAL)")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = {
            "states": d.state_count,
            "alphabet": d.alphabet_size,
            "start": d.start,
            "accepting": sorted(d.accepting),
            "dead": d.dead,
            "delta": [list(row) for row in d.delta],
        }
        return json.dumps(payload, indent=1) + "\n"
    if fmt == "dot":
        lines = ["digraph dfa {", "  rankdir=LR;", '  hidden [shape=none, label=""];']
        for q in range(d.state_count):
            if q == d.dead:
                continue
            shape = "doublecircle" if q in d.accepting else "circle"
            lines.append(f"  {q} [shape={shape}];")
        lines.append(f"  hidden -> {d.start};")
        edges: dict[tuple[int, int], list[int]] = {}
        for q, row in enumerate(d.delta):
            if q == d.dead:
                continue
            for a, t in enumerate(row):
                if t == d.dead:
                    continue
                edges.setdefault((q, t), []).append(a)
        for (q, t), syms in sorted(edges.items()):
            label = ",".join(str(a) for a in syms)
            lines.append(f'  {q} -> {t} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r} (want grail, json, or dot)")


class FormatError(ValueError):
    """Raised for malformed or nondeterministic automaton descriptions."""


def import_dfa(text: str, fmt: str = "grail") -> Dfa:
    """Parse an automaton; partial transition tables are completed with a dead state."""
    if fmt == "json":
        payload = json.loads(text)
        return Dfa(payload["delta"], payload["start"], payload["accepting"],
                   payload.get("dead"), payload["alphabet"])
    if fmt != "grail":
        raise ValueError(f"unknown format {fmt!r} (want grail or json)")

    start = None
    accepting = set()
    trans: dict[tuple[int, int], int] = {}
    states = set()
    max_symbol = -1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "(START)":
            if len(parts) != 3 or parts[1] != "|-":
                raise FormatError(f"line {lineno}: malformed start line")
            if start is not None:
                raise FormatError(f"line {lineno}: multiple start states")
            start = int(parts[2])
            states.add(start)
        elif len(parts) == 3 and parts[1] == "-|":
            if parts[2] != "(FINAL)":
                raise FormatError(f"line {lineno}: malformed final line")
            q = int(parts[0])
            accepting.add(q)
            states.add(q)
        elif len(parts) == 3:
            q, a, t = int(parts[0]), int(parts[1]), int(parts[2])
            if (q, a) in trans and trans[(q, a)] != t:
                raise FormatError(f"line {lineno}: nondeterministic transition from {q} on {a}")
            trans[(q, a)] = t
            states.update((q, t))
            max_symbol = max(max_symbol, a)
        else:
            raise FormatError(f"line {lineno}: unrecognized line {line!r}")
    if start is None:
        raise FormatError("no start state")
    k = max_symbol + 1
    if k == 0:
        raise FormatError("no transitions; alphabet size unknown")
    n = max(states) + 1
    missing = any((q, a) not in trans for q in range(n) for a in range(k))
    dead = None
    if missing:
        dead = n
        n += 1
    delta = [[trans.get((q, a), dead) for a in range(k)] for q in range(n)]
    if dead is not None:
        delta[dead] = [dead] * k
    found = _find_dead(tuple(tuple(r) for r in delta), accepting)
    return Dfa(delta, start, accepting, found, k)
