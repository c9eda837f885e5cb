#!/usr/bin/env python3
# Copyright 2026 The gmnl Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Writes the subnetwork-equivalence claim scripts under data/claims/."""

import argparse
import itertools
import json
import pathlib


def claim(desc, net_a, sub_a, net_b, sub_b=None, expect="equivalent"):
    c = {"description": desc, "netA": net_a, "netB": net_b, "expect": expect}
    if sub_a is not None:
        c["subsetA"] = sub_a
    if sub_b is not None:
        c["subsetB"] = sub_b
    return c


def named(name, swap=None):
    ref = {"family": name}
    if swap:
        ref["swap"] = swap
    return ref


def four_party():
    claims = [
        claim("ACD in J and I1", named("line4_J"), ["A", "C", "D"], named("line4_I1")),
        claim("CD in J and I1", named("line4_J"), ["C", "D"], named("line4_I1")),
        claim("CD in I1 and I0", named("line4_I1"), ["C", "D"], named("line4_I0")),
        claim("ACD differs in I1 and I0", named("line4_I1"), ["A", "C", "D"], named("line4_I0"), expect="inequivalent"),
        claim("AB in I1 and I0", named("line4_I1"), ["A", "B"], named("line4_I0")),
        claim("BCD in I1 and I0", named("line4_I1"), ["B", "C", "D"], named("line4_I0")),
        claim("AC differs in I0 and I1", named("line4_I0"), ["A", "C"], named("line4_I1"), expect="inequivalent"),
        claim("A'B'C in J and I4", named("line4_J"), ["A'", "B'", "C"], named("line4_I4")),
        claim("CD in I4 and I3", named("line4_I4"), ["C", "D"], named("line4_I3")),
        claim("A'B'D in I4 and I3", named("line4_I4"), ["A'", "B'", "D"], named("line4_I3")),
        claim("I3 relabelled is I0", named("line4_I3", ["A", "B"]), None, named("line4_I0")),
        claim("CD in I3 and I0", named("line4_I3"), ["C", "D"], named("line4_I0")),
        claim("A'B'D in I3 and ABD in I0", named("line4_I3"), ["A'", "B'", "D"], named("line4_I0"), ["A", "B", "D"]),
        claim("ABCD in J and I2", named("line4_J"), ["A", "B", "C", "D"], named("line4_I2")),
        claim("A'B'CD in J and I5", named("line4_J"), ["A'", "B'", "C", "D"], named("line4_I5")),
    ]
    return {"name": "appendixB", "claims": claims}


def lab(i, j):
    return f"[{i},{j}]"


class Cat:
    def __init__(self, legs):
        self.legs = list(legs)
        self.L = len(legs)

    def ref(self, family, **extra):
        r = {"family": family, "L": self.L, "legs": self.legs}
        r.update(extra)
        return r

    def rows(self, positions):
        out = []
        for i in positions:
            if 1 <= i <= self.L:
                out += [lab(i, j) for j in range(self.legs[i - 1] + 1)]
        return out

    def n(self, i):
        return self.legs[i - 1] if 1 <= i <= self.L else 0

    def t_parties(self, k):
        out = [lab(k, 0)] if k >= 1 else []
        out += self.rows([k + 1])
        if k + 2 <= self.L:
            out.append(lab(k + 2, 0))
        return out

    def tag(self):
        return f"L={self.L} legs={self.legs}"


def rng(n, m, step=1):
    return list(range(n, m + 1, step))


def j_chain(c, source, k):
    out = []
    tk = c.t_parties(k)
    j0 = c.ref("Jk_m", k=k, m=0)
    out.append(claim(f"{c.tag()}: T_{k} in {source} and J{k}_0", c.ref(source), tk, j0))
    n = c.n(k + 2)
    if n >= 1:
        out.append(claim(f"{c.tag()}: T_{k} differs in {source} and O", c.ref(source), tk, c.ref("O"),
                         expect="inequivalent"))
    head = [lab(k, 0)] if k >= 1 else []
    head += c.rows([k + 1])
    for m in range(n):
        jm = c.ref("Jk_m", k=k, m=m)
        pair = [lab(k + 2, m), lab(k + 2, m + 1)]
        out.append(claim(f"{c.tag()}: leg pair {m},{m + 1} of {k + 2} in J{k}_{m} and O", jm, pair, c.ref("O")))
        nxt = c.ref("Jk_m", k=k, m=m + 1) if m + 1 < n else c.ref("O")
        name = f"J{k}_{m + 1}" if m + 1 < n else "O"
        out.append(claim(f"{c.tag()}: shifted T_{k} leg {m + 1} in J{k}_{m} and {name}", jm,
                         head + [lab(k + 2, m + 1)], nxt))
    return out


def caterpillar_claims(legs):
    c = Cat(legs)
    L = c.L
    out = []
    swap = c.ref("I2", swap=[lab(1, 0)])
    if L % 2 == 0:
        out.append(claim(f"{c.tag()}: I0 and I1", c.ref("I0"), c.rows(rng(1, L - 1, 2)) + [lab(L, 0)], c.ref("I1")))
        out.append(claim(f"{c.tag()}: last triple in I1 and O", c.ref("I1"),
                         [lab(L - 2, 0)] + c.rows([L - 1]) + [lab(L, 0)], c.ref("O")))
        for k in rng(0, L - 4, 2):
            out += j_chain(c, "I1", k)
        out.append(claim(f"{c.tag()}: I0 and I2", c.ref("I0"), [lab(1, 0) + "'"] + c.rows(rng(2, L, 2)), c.ref("I2")))
        out.append(claim(f"{c.tag()}: I2 with 1 swapped is I3", swap, None, c.ref("I3")))
        for k in rng(1, L - 1, 2):
            out += j_chain(c, "I3", k)
    else:
        out.append(claim(f"{c.tag()}: I0 and I2", c.ref("I0"),
                         c.rows(rng(2, L - 1, 2)) + [lab(1, 0) + "'", lab(L, 0)], c.ref("I2")))
        out.append(claim(f"{c.tag()}: I2 with 1 swapped is I3", swap, None, c.ref("I3")))
        out.append(claim(f"{c.tag()}: last triple in I3 and O", c.ref("I3"),
                         [lab(L - 2, 0)] + c.rows([L - 1]) + [lab(L, 0)], c.ref("O")))
        for k in rng(1, L - 4, 2):
            out += j_chain(c, "I3", k)
        out.append(claim(f"{c.tag()}: I0 and I1", c.ref("I0"), c.rows(rng(1, L, 2)), c.ref("I1")))
        for k in rng(0, L - 1, 2):
            out += j_chain(c, "I1", k)
    return out


def leg_configs(L, max_legs):
    for inner in itertools.product(range(max_legs + 1), repeat=L - 2):
        yield [0, *inner, 0]


def caterpillar_suite(spines, name):
    claims = []
    for L, max_legs in spines:
        for legs in leg_configs(L, max_legs):
            claims += caterpillar_claims(legs)
    return {"name": name, "claims": claims}


def chain_claims(N):
    def ref(f, **extra):
        r = {"family": f, "N": N}
        r.update(extra)
        return r

    def triple(i):
        return [str(p) for p in (i, i + 1, i + 2) if 1 <= p <= N]

    tag = f"N={N}"
    out = []
    swap = ref("I2", swap=["1"])
    odd = [str(i) for i in rng(1, N, 2)]
    even = [str(i) for i in rng(2, N, 2)]
    if N % 2 == 0:
        for i in rng(0, N - 2, 2):
            out.append(claim(f"{tag}: triple {i} in O and I1", ref("O"), triple(i), ref("I1")))
        out.append(claim(f"{tag}: odd parties and N in I1 and I0", ref("I1"), odd + [str(N)], ref("I0")))
        for i in rng(1, N - 1, 2):
            out.append(claim(f"{tag}: triple {i} in O and I3", ref("O"), triple(i), ref("I3")))
        out.append(claim(f"{tag}: I2 with 1 swapped is I3", swap, None, ref("I3")))
        out.append(claim(f"{tag}: even parties and 1' in I2 and I0", ref("I2"), ["1'"] + even, ref("I0")))
    else:
        for i in rng(1, N - 2, 2):
            out.append(claim(f"{tag}: triple {i} in O and I3", ref("O"), triple(i), ref("I3")))
        out.append(claim(f"{tag}: I2 with 1 swapped is I3", swap, None, ref("I3")))
        out.append(claim(f"{tag}: even parties, 1' and N in I2 and I0", ref("I2"), ["1'"] + even + [str(N)], ref("I0")))
        for i in rng(0, N - 3, 2):
            out.append(claim(f"{tag}: triple {i} in O and I1", ref("O"), triple(i), ref("I1")))
        out.append(claim(f"{tag}: last pair in O and I1", ref("O"), [str(N - 1), str(N)], ref("I1")))
        out.append(claim(f"{tag}: odd parties in I1 and I0", ref("I1"), odd, ref("I0")))
    return out


def chain_suite(sizes):
    claims = []
    for N in sizes:
        claims += chain_claims(N)
    return {"name": "appendixD", "claims": claims}


def ghz(sizes):
    claims = []
    for N in sizes:
        def ref(f):
            return {"family": f, "N": N}

        parties = [str(i) for i in rng(1, N)]
        for j in rng(1, N - 1):
            claims.append(claim(f"N={N}: pair {j} in O and ghz_I1", ref("O"), [str(j), str(j + 1)], ref("ghz_I1")))
        claims.append(claim(f"N={N}: 1,N in ghz_I1 and 1,N' in ghz_I0", ref("ghz_I1"), ["1", str(N)], ref("ghz_I0"),
                            ["1", f"{N}'"]))
        claims.append(claim(f"N={N}: unprimed copy of ghz_I0 is O", ref("ghz_I0"), parties, ref("O")))
        claims.append(claim(f"N={N}: 1,N share a source in O", ref("O"), ["1", str(N)], ref("ghz_I1"),
                            expect="inequivalent"))
    return {"name": "ghz", "claims": claims}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    default = pathlib.Path(__file__).resolve().parent.parent / "data" / "claims"
    ap.add_argument("--out", type=pathlib.Path, default=default)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    scripts = {
        "appendixB": four_party(),
        "appendixC": caterpillar_suite([(4, 1), (5, 1)], "appendixC"),
        "appendixC_wide": caterpillar_suite([(4, 2), (5, 2), (6, 1), (7, 1)], "appendixC_wide"),
        "appendixD": chain_suite([3, 4, 5, 6, 7]),
        "ghz": ghz([3, 4, 5, 6]),
    }
    for name, script in scripts.items():
        path = args.out / f"{name}.json"
        if len(script["claims"]) > 500:
            text = json.dumps(script, separators=(",", ":"))
        else:
            text = json.dumps(script, indent=1)
        path.write_text(text + "\n")
        print(f"{path}: {len(script['claims'])} claims")


if __name__ == "__main__":
    main()
