"""Digit-input trellis of a polynomial encoder.

Inputs range over A_p^k at every time step. The state holds, for each row
of degree e, its last e input digits, so there are p^(sum of row degrees)
states. A finite input u(D) is a path that leaves the zero state and returns
to it once the memory is flushed, and the path weight is wt(u(D) G(D)).
"""

from __future__ import annotations

import heapq

import numpy as np

from .ring import PolyMatrix, PolyVector

DEFAULT_BUDGET = 2**22


class BudgetExceeded(RuntimeError):
    pass


class DigitTrellis:
    def __init__(self, G: PolyMatrix, budget: int = DEFAULT_BUDGET):
        ctx = G.context
        self.G = G
        self.ctx = ctx
        p, mod = ctx.p, ctx.modulus
        k, n = G.k, G.n
        self.degrees = [0 if v.degree is None else v.degree for v in G.rows]
        memory = sum(self.degrees)
        self.n_states = p**memory
        self.n_inputs = p**k
        if self.n_states * self.n_inputs > budget:
            raise BudgetExceeded(
                f"trellis with {self.n_states} states x {self.n_inputs} inputs exceeds budget {budget}"
            )
        S, I = self.n_states, self.n_inputs

        # state digit positions: (row, lag) for lag = 1..deg, most recent first
        positions = [(j, lag) for j, e in enumerate(self.degrees) for lag in range(1, e + 1)]
        place = {pos: p**i for i, pos in enumerate(positions)}
        states = np.arange(S, dtype=np.int64)
        inputs = np.arange(I, dtype=np.int64)
        sdig = {pos: (states // place[pos]) % p for pos in positions}
        idig = [(inputs // p**j) % p for j in range(k)]

        nxt = np.zeros((S, I), dtype=np.int64)
        for (j, lag) in positions:
            if lag == 1:
                nxt += place[(j, 1)] * idig[j][None, :]
            else:
                nxt += (place[(j, lag)] * sdig[(j, lag - 1)])[:, None]
        self.next = nxt

        weight = np.zeros((S, I), dtype=np.int64)
        for col in range(n):
            acc = np.zeros((S, I), dtype=np.int64)
            for j, row in enumerate(G.rows):
                for lag in range(self.degrees[j] + 1):
                    g = row.coefficient(lag)[col]
                    if not g:
                        continue
                    if lag == 0:
                        acc = (acc + g * idig[j][None, :]) % mod
                    else:
                        acc = (acc + (g * sdig[(j, lag)])[:, None]) % mod
            weight += acc != 0
        self.weight = weight

        flush = np.zeros(S, dtype=np.int64)
        cur = states.copy()
        for _ in range(max(self.degrees, default=0)):
            flush += weight[cur, 0]
            cur = nxt[cur, 0]
        self.flush = flush

    # helpers --------------------------------------------------------------
    def input_digits(self, i: int) -> tuple[int, ...]:
        p = self.ctx.p
        return tuple((i // p**j) % p for j in range(self.G.k))

    def input_vector(self, seq: list[int]) -> PolyVector:
        """The input polynomial vector u(D) for a sequence of input indices."""
        k = self.G.k
        coeffs = [self.input_digits(i) for i in seq]
        return PolyVector.from_coeffs(self.ctx, k, coeffs)

    # row distances --------------------------------------------------------
    def row_distances(self, max_degree: int):
        """d^r_0..d^r_J and, for d^r_J, the minimising input index sequence."""
        S, I = self.n_states, self.n_inputs
        inf = np.iinfo(np.int64).max // 4
        best = np.full(S, inf, dtype=np.int64)
        back = []
        # first input must be nonzero; leading zeros only shift the codeword
        cand = self.weight[0, 1:]
        tgt = self.next[0, 1:]
        prev_s = np.full(S, -1, dtype=np.int64)
        prev_i = np.full(S, -1, dtype=np.int64)
        order = np.lexsort((np.arange(1, I), cand, tgt))
        seen = set()
        for idx in order:
            t = int(tgt[idx])
            if t in seen:
                continue
            seen.add(t)
            best[t] = cand[idx]
            prev_s[t] = 0
            prev_i[t] = idx + 1
        back.append((prev_s, prev_i))
        results = []
        ends = []
        for step in range(max_degree + 1):
            if step > 0:
                total = best[:, None] + self.weight
                total[best >= inf] = inf
                flat = total.ravel()
                tgt = self.next.ravel()
                order = np.lexsort((np.arange(S * I), flat, tgt))
                first = np.ones(len(order), dtype=bool)
                first[1:] = tgt[order][1:] != tgt[order][:-1]
                chosen = order[first]
                new = np.full(S, inf, dtype=np.int64)
                prev_s = np.full(S, -1, dtype=np.int64)
                prev_i = np.full(S, -1, dtype=np.int64)
                new[tgt[chosen]] = flat[chosen]
                prev_s[tgt[chosen]] = chosen // I
                prev_i[tgt[chosen]] = chosen % I
                best = new
                back.append((prev_s, prev_i))
            done = best + self.flush
            done[best >= inf] = inf
            end = int(np.argmin(done))
            results.append(int(done[end]))
            ends.append(end)
        # trace back the last step
        seq = []
        s = ends[-1]
        for prev_s, prev_i in reversed(back):
            seq.append(int(prev_i[s]))
            s = int(prev_s[s])
        seq.reverse()
        return results, seq

    # exact free distance ----------------------------------------------------
    def free_distance(self):
        """Minimum weight over all nonzero finite inputs, with a witness.

        Dijkstra from the zero state (first input nonzero) back to it.
        Returns (weight, input index sequence) or (None, None) if the zero
        state is unreachable, which cannot happen for a finite trellis.
        """
        I = self.n_inputs
        W = self.weight.tolist()
        N = self.next.tolist()
        source = -1
        heap = []
        for i in range(1, I):
            heapq.heappush(heap, (W[0][i], N[0][i], source, i))
        settled: dict[int, tuple[int, int]] = {}
        while heap:
            cost, node, prev, inp = heapq.heappop(heap)
            if node in settled:
                continue
            settled[node] = (prev, inp)
            if node == 0:
                seq = []
                cur = 0
                while True:
                    prev, inp = settled[cur]
                    seq.append(inp)
                    if prev == source:
                        break
                    cur = prev
                seq.reverse()
                return cost, seq
            row_w, row_n = W[node], N[node]
            for i in range(I):
                nb = row_n[i]
                if nb not in settled:
                    heapq.heappush(heap, (cost + row_w[i], nb, node, i))
        return None, None
