#!/usr/bin/env python3
"""Reference computations for the mini-wiki fixture.

Everything here is written from the rules directly, without sharing code
with the engine: file parsing, the naive base-set rule, a dense iteration,
straight-line agglomerative clustering over exact fractions, and brute-force
subset selection. Output is the golden JSON the C++ tests compare against.

    mini_wiki_oracle.py FIXTURE_DIR OUT_DIR      # write goldens
    mini_wiki_oracle.py FIXTURE_DIR --check DIR  # compare with committed goldens
"""

import itertools
import json
import math
import os
import sys
from fractions import Fraction


def read_records(path, arity):
    rows = []
    with open(path, encoding="utf-8") as f:
        for raw in f:
            line = raw.rstrip("\n").rstrip("\r")
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            assert len(parts) == arity, (path, line)
            rows.append(parts)
    return rows


def normalize(title):
    words = title.replace("_", " ").split()
    t = " ".join(words)
    return t[:1].upper() + t[1:] if t else t


class Wiki:
    def __init__(self, d):
        self.title = {}
        self.order = []
        for i, t in read_records(os.path.join(d, "mini_wiki.docs.tsv"), 2):
            self.title[int(i)] = normalize(t)
            self.order.append(int(i))
        self.out = {i: [] for i in self.order}
        self.inn = {i: [] for i in self.order}
        self.dropped = 0
        self.links = 0
        seen = set()
        for s, t in read_records(os.path.join(d, "mini_wiki.links.tsv"), 2):
            s, t = int(s), int(t)
            if s not in self.title or t not in self.title:
                self.dropped += 1
                continue
            if (s, t) in seen:
                continue
            seen.add((s, t))
            self.out[s].append(t)
            self.inn[t].append(s)
            self.links += 1
        self.cat_name = {}
        for c, name, parent in read_records(os.path.join(d, "mini_wiki.categories.tsv"), 3):
            self.cat_name[int(c)] = name
        self.cats = {i: [] for i in self.order}
        for doc, c in read_records(os.path.join(d, "mini_wiki.members.tsv"), 2):
            if int(c) not in self.cats[int(doc)]:
                self.cats[int(doc)].append(int(c))

    def by_title(self, t):
        for i, title in self.title.items():
            if title == normalize(t):
                return i
        raise KeyError(t)


def root_set(w, s, t, mode):
    links = w.out[s] if mode == "adapted" else w.inn[s]
    return sorted({s} | set(links[: t - 1]))


def base_set(w, root, d):
    v = set(root)
    for r in root:
        v |= set(w.out[r])
        v |= set(w.inn[r][:d])
    vs = sorted(v)
    edges = sorted((a, b) for a in vs for b in w.out[a] if b in v)
    return vs, edges


def iterate(vs, edges, eps, max_iter):
    n = len(vs)
    pos = {x: k for k, x in enumerate(vs)}
    # dense adjacency, adj[i][j] = 1 for edge i->j
    adj = [[0] * n for _ in range(n)]
    for a, b in edges:
        adj[pos[a]][pos[b]] = 1
    auth = [1.0] * n
    hub = [1.0] * n
    it = 0
    while True:
        na = [0.0] * n
        for j in range(n):
            acc = 0.0
            for i in range(n):
                if adj[i][j]:
                    acc += hub[i]
            na[j] = acc
        na = unit(na)
        nh = [0.0] * n
        for j in range(n):
            acc = 0.0
            for i in range(n):
                if adj[j][i]:
                    acc += na[i]
            nh[j] = acc
        nh = unit(nh)
        err = 0.0
        for k in range(n):
            err += abs(na[k] - auth[k]) + abs(nh[k] - hub[k])
        auth, hub = na, nh
        it += 1
        if err <= eps or it >= max_iter:
            break
    return {x: auth[pos[x]] for x in vs}, {x: hub[pos[x]] for x in vs}, it, err


def unit(x):
    sq = 0.0
    for v in x:
        sq += v * v
    if sq == 0.0:
        return x
    nrm = math.sqrt(sq)
    return [v / nrm for v in x]


def rank_key(x):
    return math.floor(x * 1e9 + 0.5)


def frac_key(q):
    return math.floor(q * 10**9 + Fraction(1, 2))


def jac(a, b):
    a, b = set(a), set(b)
    u = len(a | b)
    return Fraction(0) if u == 0 else Fraction(len(a & b), u)


def cluster(w, vs, edges, auth, c_max):
    vset = set(vs)
    outs = {x: {b for (a, b) in edges if a == x} for x in vs}
    sim = {}
    for x in vs:
        for y in vs:
            sim[(x, y)] = Fraction(1, 2) * jac(outs[x], outs[y]) + Fraction(1, 2) * jac(w.cats[x], w.cats[y])
    clusters = [[x] for x in vs]

    def cats_of(c):
        s = set()
        for m in c:
            s |= set(w.cats[m])
        return s

    def weight(c):
        return len(c) + len(cats_of(c))

    while True:
        best = None
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                a, b = clusters[i], clusters[j]
                total = sum((sim[(x, y)] for x in a for y in b), Fraction(0))
                if total <= 0 or weight(a + b) > c_max:
                    continue
                mean = total / (len(a) * len(b))
                lo, hi = sorted((min(a), min(b)))
                key = (frac_key(mean), -lo, -hi)
                if best is None or key > best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _, i, j = best
        merged = sorted(clusters[i] + clusters[j])
        clusters = [c for k, c in enumerate(clusters) if k not in (i, j)] + [merged]

    out = []
    for c in clusters:
        c = sorted(c)
        freq = {}
        for m in c:
            for cat in w.cats[m]:
                freq[cat] = freq.get(cat, 0) + 1
        if freq:
            top = max(freq.values())
            label = w.cat_name[min(k for k, v in freq.items() if v == top)]
        else:
            label = min(w.title[m] for m in c)
        cats = sorted(cats_of(c))
        out.append({
            "members": c,
            "categories": cats,
            "weight": len(c) + len(cats),
            "over_cap": len(c) + len(cats) > c_max,
            "label": label,
            "_rank": max(rank_key(auth[m]) for m in c),
        })
    out.sort(key=lambda c: (-c["_rank"], c["members"][0]))
    for c in out:
        del c["_rank"]
    return out


def select(vs, edges, s, auth, hub, members, n, k):
    eset = set(edges)
    witnesses = {}
    for a in members:
        if a == s:
            continue
        ws = [h for h in vs if (h, s) in eset and (h, a) in eset]
        if ws:
            witnesses[a] = ws
    feasible = sorted(witnesses)
    size = min(n, len(feasible))
    assert math.comb(len(feasible), size) <= 2_000_000
    best_sum = None
    best = []
    for combo in itertools.combinations(feasible, size):
        total = sum(auth[a] for a in combo)
        if best_sum is None or total > best_sum + 1e-12:
            best_sum, best = total, [combo]
        elif abs(total - best_sum) <= 1e-12:
            best.append(combo)
    if not best or size == 0:
        return {"selected": [], "supporting_hubs": {}, "objective_value": 0.0}
    ordered = [sorted(c, key=lambda a: (-rank_key(auth[a]), a)) for c in best]
    chosen = min(ordered, key=lambda c: [(-rank_key(auth[a]), a) for a in c])
    hubs = sorted({h for a in chosen for h in witnesses[a]})
    objective = k * sum(auth[a] for a in chosen) + (1 - k) * sum(hub[h] for h in hubs)
    return {
        "selected": [[a, auth[a]] for a in chosen],
        "supporting_hubs": {str(a): witnesses[a] for a in chosen},
        "objective_value": objective,
    }


def search(w, s, t, d, n, c_max, eps, k, mode="adapted", max_iter=1000):
    root = root_set(w, s, t, mode)
    vs, edges = base_set(w, root, d)
    auth, hub, it, err = iterate(vs, edges, eps, max_iter)
    clusters = cluster(w, vs, edges, auth, c_max)
    for c in clusters:
        c.update(select(vs, edges, s, auth, hub, c["members"], n, k))
    return {
        "params": {"t": t, "d": d, "n": n, "c_max": c_max, "epsilon": eps, "k": k, "root_mode": mode},
        "source": s,
        "root_set": root,
        "vertices": vs,
        "edges": [list(e) for e in edges],
        "authority": {str(x): auth[x] for x in vs},
        "hub": {str(x): hub[x] for x in vs},
        "iterations_used": it,
        "final_error": err,
        "clusters": clusters,
    }


def build(fixture):
    w = Wiki(fixture)
    automaton = w.by_title("Automaton")
    android = w.by_title("Android")
    audit = {
        "stats": {"pages": len(w.order), "links": w.links, "categories": len(w.cat_name),
                  "dropped_dangling_links": w.dropped},
        "doc7": {"out_links": w.out[7], "in_links": w.inn[7], "categories": w.cats[7]},
        "classic_root_automaton_t5": root_set(w, automaton, 5, "classic"),
        "base_sets": [],
    }
    for t in (1, 3, 10):
        for d in (0, 2, 20):
            vs, edges = base_set(w, root_set(w, automaton, t, "adapted"), d)
            audit["base_sets"].append({"source": automaton, "t": t, "d": d, "vertices": vs,
                                       "edges": [list(e) for e in edges]})
    vs, edges = base_set(w, [automaton, android], 2)
    audit["base_set_automaton_android_d2"] = {"vertices": vs, "edges": [list(e) for e in edges]}

    goldens = {
        "audit.json": audit,
        "search_automaton.json": search(w, automaton, 10, 3, 5, 12, 1e-8, 0.5),
        "search_automaton_n1.json": search(w, automaton, 10, 3, 1, 12, 1e-8, 0.5),
        "search_automaton_default.json": search(w, automaton, 50, 20, 10, 30, 1e-8, 0.5),
        "search_robot_classic.json": search(w, w.by_title("Robot"), 10, 3, 5, 12, 1e-8, 0.5, "classic"),
    }
    return goldens


def main(argv):
    fixture = argv[1]
    goldens = build(fixture)
    if len(argv) == 4 and argv[2] == "--check":
        bad = 0
        for name, doc in goldens.items():
            with open(os.path.join(argv[3], name), encoding="utf-8") as f:
                if json.load(f) != json.loads(json.dumps(doc)):
                    print("mismatch:", name)
                    bad += 1
        print("oracle goldens", "differ" if bad else "match")
        return 1 if bad else 0
    out = argv[2]
    os.makedirs(out, exist_ok=True)
    for name, doc in goldens.items():
        with open(os.path.join(out, name), "w", encoding="utf-8") as f:
            json.dump(doc, f, indent=1, ensure_ascii=False)
            f.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
