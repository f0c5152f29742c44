#!/usr/bin/env python3
"""Independent Python oracles checked against the CLI's outputs.

Each check recomputes one stage from raw inputs without the C++ code and
compares with what `rumortrack` wrote.
"""
import argparse
import collections
import datetime as dt
import json
import math
import os
import shutil
import subprocess
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))
import feature_reference as ref  # noqa: E402

NOMINAL = {"IS_RETWEET", "HAS_MENTIONS", "HAS_HASHTAG", "DAY_WEEKDAY", "COUNTRY", "QUESTION_MARK",
           "EXCLAMATION_MARK", "MULTIPLE_QUES_EXCL", "HAS_PRONOUN_1", "HAS_PRONOUN_2", "HAS_PRONOUN_3"}

failures = []


def check(ok, what):
    print(("ok   " if ok else "FAIL ") + what)
    if not ok:
        failures.append(what)


def cli(args, *rest):
    r = subprocess.run([args.cli, *rest], capture_output=True, text=True)
    if r.returncode != 0:
        raise SystemExit("command failed: %s\n%s" % (" ".join(rest), r.stderr))
    return r.stdout


def read_jsonl(path):
    with open(path, encoding="utf-8") as f:
        return [json.loads(line) for line in f if line.strip()]


def read_tsv(path, header=True):
    with open(path, encoding="utf-8") as f:
        lines = [l.rstrip("\n").split("\t") for l in f if l.strip()]
    return lines[1:] if header else lines


# --- tokens and queries ------------------------------------------------------

def tokenize(canonical):
    out, tok = [], ""
    for c in canonical + " ":
        if c in ref.SPACE or c in ".,?":
            if tok.strip("#"):
                out.append(tok)
            tok = ""
        else:
            tok += c.lower()
    return out


def parse_query(text):
    lex, i = [], 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()&|":
            lex.append((c, c))
            i += 1
        elif c == '"':
            j = text.index('"', i + 1)
            lex.append(("phrase", text[i + 1:j]))
            i = j + 1
        else:
            j = i
            while j < len(text) and not text[j].isspace() and text[j] not in '()&|"':
                j += 1
            word = text[i:j]
            rest = text[j:].lstrip()
            lex.append(("not" if word.lower() == "not" and rest.startswith("(") else "word", word))
            i = j
    lex.append(("end", ""))
    pos = [0]

    def peek():
        return lex[pos[0]][0]

    def take():
        pos[0] += 1
        return lex[pos[0] - 1]

    def primary():
        kind, val = take()
        if kind == "(":
            node = disj()
            assert take()[0] == ")"
            return node
        if kind == "not":
            assert take()[0] == "("
            node = disj()
            assert take()[0] == ")"
            return ("not", node)
        toks = tokenize(ref.keep_and_collapse(val.lower()))
        return ("seq", toks)

    def conj():
        node = primary()
        while peek() == "&":
            take()
            node = ("and", node, primary())
        return node

    def disj():
        node = conj()
        while peek() == "|":
            take()
            node = ("or", node, conj())
        return node

    tree = disj()
    assert peek() == "end"
    return tree


def tok_match(q, d):
    return q == d or (d.startswith("#") and d.lstrip("#") == q)


def holds(node, doc):
    kind = node[0]
    if kind == "seq":
        q = node[1]
        return any(all(tok_match(q[k], doc[i + k]) for k in range(len(q))) for i in range(len(doc) - len(q) + 1))
    if kind == "and":
        return holds(node[1], doc) and holds(node[2], doc)
    if kind == "or":
        return holds(node[1], doc) or holds(node[2], doc)
    return not holds(node[1], doc)


# --- information gain --------------------------------------------------------

def entropy(ys):
    n = len(ys)
    h = 0.0
    for c in collections.Counter(ys).values():
        p = c / n
        h -= p * math.log2(p)
    return h


def gain(column, ys, nominal):
    n = len(ys)
    if nominal:
        keys = column
    else:
        s = sorted(column)
        cuts = sorted({s[b * n // 10] for b in range(1, 10)})
        keys = [sum(v >= c for c in cuts) for v in column]
    parts = collections.defaultdict(list)
    for k, y in zip(keys, ys):
        parts[k].append(y)
    cond = sum(len(p) / n * entropy(p) for p in parts.values())
    return max(0.0, entropy(ys) - cond)


def pearson(x, y):
    n = len(x)
    if n < 2:
        return None
    mx, my = sum(x) / n, sum(y) / n
    sxx = sum((a - mx) ** 2 for a in x)
    syy = sum((b - my) ** 2 for b in y)
    if sxx == 0 or syy == 0:
        return None
    sxy = sum((a - mx) * (b - my) for a, b in zip(x, y))
    return sxy / math.sqrt(sxx * syy)


# --- checks ------------------------------------------------------------------

def check_features(args):
    fx = os.path.join(args.source, "tests", "fixtures")
    out = subprocess.run([sys.executable, os.path.join(args.source, "tests", "oracles", "feature_reference.py"),
                          "--fixture", os.path.join(fx, "features50"), "--tables", os.path.join(fx, "tables")],
                         capture_output=True, text=True, check=True).stdout
    with open(os.path.join(fx, "features50", "expected.csv"), encoding="utf-8") as f:
        frozen = f.read()
    check(out == frozen, "feature reference script reproduces the frozen 50-message table")


def check_corpus(args, name, cfg_path):
    work = os.path.join(args.work, name)
    cli(args, "ingest", "-c", cfg_path, "-o", work)
    cfg = json.load(open(cfg_path, encoding="utf-8"))
    lang = cfg.get("language", "en")
    snap = read_jsonl(os.path.join(work, "snapshot.jsonl"))

    # dedup: canonical text, groups, earliest representative
    kept = [m for m in snap if m["language"] == lang]
    groups = collections.defaultdict(list)
    for m in kept:
        groups[ref.clean(m["text"])].append(m)
    rep = {c: min(ms, key=lambda m: (ref.timestamp(m["created_at"]), m["id"]))["id"] for c, ms in groups.items()}
    want = [[m["id"], rep[ref.clean(m["text"])], ref.clean(m["text"])] for m in kept]
    got = read_tsv(os.path.join(work, "normalized.tsv"))
    got = [r + [""] * (3 - len(r)) for r in got]
    check(got == want, "%s: normalized text and duplicate groups (%d messages, %d groups)" % (name, len(want),
                                                                                             len(groups)))

    # stats: per-language totals and users
    stats = json.load(open(os.path.join(work, "stats.json"), encoding="utf-8"))
    by_lang = collections.defaultdict(list)
    for m in snap:
        by_lang[m["language"]].append(m["author_id"])
    rows = sorted(by_lang.items(), key=lambda kv: (-len(kv[1]), kv[0]))
    want_rows = [(l, len(u), len(set(u)), "%.2f" % (len(u) / len(set(u)))) for l, u in rows]
    got_rows = [(r["language"], r["total_messages"], r["distinct_users"], r["messages_per_user"])
                for r in stats["languages"]]
    check(got_rows == want_rows, "%s: per-language message and user counts" % name)
    check(stats["total"]["total_messages"] == len(snap) and
          stats["unique_users"] == len({m["author_id"] for m in snap}), "%s: corpus totals" % name)

    # index: postings from the canonical text
    with open(os.path.join(work, "index.txt"), encoding="utf-8") as f:
        lines = f.read().split("\n")
    ndocs = int(lines[1].split("\t")[1])
    doc_ids = lines[2:2 + ndocs]
    nterms = int(lines[2 + ndocs].split("\t")[1])
    postings = {}
    for line in lines[3 + ndocs:]:
        if not line:
            continue
        cols = line.split("\t")
        postings[cols[0]] = {(int(p.split(":")[0]), int(q)) for p in cols[1:] for q in p.split(":")[1].split(",")}
    docs = [tokenize(c) for _, _, c in want]
    expect = collections.defaultdict(set)
    for d, toks in enumerate(docs):
        for p, t in enumerate(toks):
            expect[t].add((d, p))
            if t.startswith("#") and t.lstrip("#"):
                expect[t.lstrip("#")].add((d, p))
    check(doc_ids == [m["id"] for m in kept] and nterms == len(postings) and postings == dict(expect),
          "%s: index postings (%d tokens)" % (name, len(expect)))

    # queries: brute force over the token lists
    out = cli(args, "query", "run", "-c", cfg_path)
    hits = collections.defaultdict(list)
    for line in out.splitlines():
        r, i = line.split("\t")
        hits[r].append(i)
    for r in cfg["rumors"]:
        tree = parse_query(r["query"])
        want_ids = [doc_ids[d] for d, toks in enumerate(docs) if holds(tree, toks)]
        check(hits.get(r["id"], []) == want_ids, "%s: %s query hits (%d)" % (name, r["id"], len(want_ids)))
    return work


def check_run(args, cfg_path):
    data = os.path.join(args.work, "runs")
    cli(args, "run", "-c", cfg_path, "-d", data, "-q")
    cfg = json.load(open(cfg_path, encoding="utf-8"))
    run = os.path.join(data, cfg["run_id"])
    base = os.path.dirname(cfg_path)

    # lexicon
    lx = cfg["lexicon"]
    m_docs = open(os.path.join(base, lx["corpus_m"]), encoding="utf-8").read().split("\n")
    w_docs = open(os.path.join(base, lx["corpus_w"]), encoding="utf-8").read().split("\n")
    m = collections.Counter(t for d in m_docs for t in ref.lexicon_tokens(d))
    w = collections.Counter(t for d in w_docs for t in ref.lexicon_tokens(d))
    if lx.get("truncate_general", True) and len(w) > len(m):
        w = collections.Counter(dict(sorted(sorted(w.items()), key=lambda kv: -kv[1])[:len(m)]))
    mt, wt = sum(m.values()), sum(w.values())
    entries = [(word, m.get(word, 0) / mt, w.get(word, 0) / wt) for word in set(m) | set(w)]
    entries.sort(key=lambda e: (-(e[1] - e[2]), e[0]))
    entries = entries[:lx["keep"]]
    got = read_tsv(os.path.join(run, "lexicon", "lexicon.tsv"), header=False)
    ok = len(got) == len(entries)
    worst = 0.0
    for g, e in zip(got, entries):
        ok = ok and g[0] == e[0] and int(g[4]) == entries.index(e) + 1
        worst = max(worst, abs(float(g[3]) - (e[1] - e[2])), abs(float(g[1]) - e[1]), abs(float(g[2]) - e[2]))
    check(ok and worst <= 1e-12, "lexicon: %d words, order and p within 1e-12 (max err %.3g)" % (len(got), worst))

    # information gain over the feature matrix
    matrix = os.path.join(run, "features", "matrix.csv")
    with open(matrix, encoding="utf-8") as f:
        header, *rows = [l.rstrip("\n").split(",") for l in f if l.strip()]
    names = header[1:-2]
    ys = [r[-2] == "rumor" for r in rows]
    ig = json.loads(cli(args, "learn", "ig", "--matrix", matrix, "-k", "0"))["ranking"]
    want = {n: gain([float(r[1 + i]) for r in rows], ys, n in NOMINAL) for i, n in enumerate(names)}
    worst = max(abs(e["gain"] - want[e["feature"]]) for e in ig)
    order = all(ig[i]["gain"] >= ig[i + 1]["gain"] for i in range(len(ig) - 1))
    check(len(ig) == len(names) and order and worst <= 1e-9,
          "information gain: %d features within 1e-9 of brute force (max err %.3g)" % (len(ig), worst))
    tsv = read_tsv(os.path.join(run, "learn", "ig.tsv"))
    check([(r[1], float(r[2])) for r in tsv] == [(e["feature"], e["gain"]) for e in ig],
          "learn ig matches the run's ig.tsv")

    # timeline: daily UTC bins of propagated labels, raw-count Pearson r
    report = json.load(open(os.path.join(run, "report.json"), encoding="utf-8"))
    created = {m["id"]: m["created_at"] for m in read_jsonl(os.path.join(run, "corpus", "snapshot.jsonl"))}
    first = dt.date.fromisoformat(report["timeline"]["first_day"])
    last = dt.date.fromisoformat(report["timeline"]["last_day"])
    days = (last - first).days + 1
    corr = {}
    with open(os.path.join(run, "timeline", "correlations.csv"), encoding="utf-8") as f:
        for line in list(f)[1:]:
            c = line.rstrip("\n").split(",")
            corr[c[0]] = c
    events_tsv = "rumor_id\tlabel\tcreated_at\n"
    for r in cfg["rumors"]:
        series = {"rumor": [0] * days, "clarification": [0] * days}
        for mid, _, label in read_tsv(os.path.join(run, "annotation", r["id"], "labels.tsv")):
            events_tsv += "%s\t%s\t%s\n" % (r["id"], label, created[mid])
            day = (dt.date.fromisoformat(created[mid][:10]) - first).days
            if label in series and 0 <= day < days:
                series[label][day] += 1
        with open(os.path.join(run, "timeline", r["id"] + ".csv"), encoding="utf-8") as f:
            got = [l.rstrip("\n").split(",") for l in list(f)[1:] if l.strip()]
        want_rows = [[(first + dt.timedelta(d)).isoformat(), str(series["rumor"][d]), str(series["clarification"][d])]
                     for d in range(days)]
        pr = pearson(series["rumor"], series["clarification"])
        got_r = corr[r["id"]][3]
        r_ok = (pr is None and got_r == "") or (pr is not None and got_r != "" and abs(float(got_r) - pr) <= 1e-12)
        check(got == want_rows and r_ok, "timeline %s: %d daily bins and r = %s" % (r["id"], days, got_r or "absent"))

    # the timeline verb over the same events gives the same files
    ev = os.path.join(args.work, "events.tsv")
    with open(ev, "w", encoding="utf-8") as f:
        f.write(events_tsv)
    tl = os.path.join(args.work, "timeline")
    cli(args, "timeline", "-e", ev, "--start", first.isoformat(), "--end", last.isoformat(), "-o", tl)
    same = all(open(os.path.join(tl, n), "rb").read() == open(os.path.join(run, "timeline", n), "rb").read()
               for n in os.listdir(os.path.join(run, "timeline")))
    check(same, "timeline verb reproduces the run's series, plots and correlations")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--source", required=True)
    ap.add_argument("--work", required=True)
    args = ap.parse_args()
    shutil.rmtree(args.work, ignore_errors=True)
    os.makedirs(args.work)

    check_features(args)
    mini = os.path.join(args.source, "tests", "fixtures", "mini_config.json")
    check_corpus(args, "mini", mini)
    check_corpus(args, "demo", os.path.join(args.source, "data", "demo", "config.json"))
    check_run(args, mini)
    print("%d failure(s)" % len(failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
