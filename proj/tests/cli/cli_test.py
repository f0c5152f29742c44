#!/usr/bin/env python3
"""CLI and HTTP service end to end: equivalence, report schema, re-run
identity, and concurrent annotation against a serial replay."""
import argparse
import collections
import filecmp
import json
import os
import random
import shutil
import subprocess
import sys
import threading
import urllib.error
import urllib.request

import jsonschema

failures = []


def check(ok, what):
    print(("ok   " if ok else "FAIL ") + what)
    if not ok:
        failures.append(what)


class Cli:
    def __init__(self, path):
        self.path = path

    def __call__(self, *args, ok=True):
        r = subprocess.run([self.path, *args], capture_output=True, text=True)
        if ok and r.returncode != 0:
            raise SystemExit("command failed: %s\n%s" % (" ".join(args), r.stderr))
        return r


class Server:
    def __init__(self, cli, config, data_dir):
        self.proc = subprocess.Popen([cli, "serve", "-c", config, "-d", data_dir, "-p", "0"], stdout=subprocess.PIPE,
                                     stderr=subprocess.PIPE, text=True)
        line = self.proc.stdout.readline().strip()
        if not line.startswith("listening on "):
            self.proc.kill()
            raise SystemExit("server did not start: %r %s" % (line, self.proc.stderr.read()))
        self.base = "http://" + line[len("listening on "):]

    def request(self, method, path, body=None):
        data = None if body is None else json.dumps(body).encode()
        req = urllib.request.Request(self.base + path, data=data, method=method,
                                     headers={"Content-Type": "application/json"})
        try:
            with urllib.request.urlopen(req, timeout=30) as r:
                return r.status, json.loads(r.read())
        except urllib.error.HTTPError as e:
            return e.code, json.loads(e.read())

    def stop(self):
        self.proc.terminate()
        self.proc.wait(timeout=10)


def tree_equal(a, b):
    cmp = filecmp.dircmp(a, b)
    if cmp.left_only or cmp.right_only or cmp.funny_files:
        return False
    _, mismatch, errors = filecmp.cmpfiles(a, b, cmp.common_files, shallow=False)
    if mismatch or errors:
        return False
    return all(tree_equal(os.path.join(a, d), os.path.join(b, d)) for d in cmp.common_dirs)


def count_files(d):
    return sum(len(f) for _, _, f in os.walk(d))


def serial_replay(log_lines):
    """Tallies recomputed from the persisted event log, in sequence order."""
    create = log_lines[0]["task"]
    cfg = create["config"]
    gold = {g["message_id"]: g["label"] for g in create["gold"]}
    judgments = sorted((e for e in log_lines[1:] if e["type"] == "judgment"), key=lambda e: e["seq"])
    score = collections.defaultdict(lambda: [0, 0])
    banned = set()
    for e in judgments:
        if e["message"] in gold:
            s = score[e["worker"]]
            s[0] += 1
            s[1] += e["label"] == gold[e["message"]]
            if s[0] >= cfg["min_gold_attempts"] and 100 * s[1] < cfg["min_accuracy_percent"] * s[0]:
                banned.add(e["worker"])
    out = {}
    for mid in create["candidates"]:
        if mid in gold:
            out[mid] = ("1", gold[mid])
            continue
        votes = [e["label"] for e in judgments if e["message"] == mid and e["worker"] not in banned]
        res = ("0", "")
        counts = collections.Counter()
        for n, v in enumerate(votes, 1):
            counts[v] += 1
            if n < cfg["min_judgments"]:
                continue
            top = [l for l, c in counts.items() if 2 * c > n]
            if top:
                res = ("1", top[0])
                break
            if n >= cfg["max_judgments"]:
                res = ("1", "other")
                break
        out[mid] = res
    return out, banned, len(judgments)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--source", required=True)
    ap.add_argument("--work", required=True)
    args = ap.parse_args()
    shutil.rmtree(args.work, ignore_errors=True)
    os.makedirs(args.work)
    cli = Cli(args.cli)
    mini = os.path.join(args.source, "tests", "fixtures", "mini_config.json")
    demo = os.path.join(args.source, "data", "demo", "config.json")
    schema = json.load(open(os.path.join(args.source, "docs", "report.schema.json"), encoding="utf-8"))

    # runs: schema, conservation, config hash on every artifact, bit-identical re-runs
    for name, cfg_path in (("mini", mini), ("demo", demo)):
        run_id = json.load(open(cfg_path, encoding="utf-8"))["run_id"]
        dirs = [os.path.join(args.work, "%s_%s" % (name, k)) for k in "ab"]
        out = [cli("run", "-c", cfg_path, "-d", d).stdout for d in dirs]
        report = json.load(open(os.path.join(dirs[0], run_id, "report.json"), encoding="utf-8"))
        try:
            jsonschema.validate(report, schema)
            valid = True
        except jsonschema.ValidationError as e:
            print(e)
            valid = False
        check(valid, "%s: report validates against the schema" % name)
        check(json.loads(out[0]) == report, "%s: printed report equals report.json" % name)
        check(all(sum(a["propagated"].values()) + a["unlabeled_messages"] == a["hits"] for a in report["annotation"]),
              "%s: labeled + unlabeled = hits for every rumor" % name)
        manifest = json.load(open(os.path.join(dirs[0], run_id, "run.json"), encoding="utf-8"))
        check(all(a["config_hash"] == report["config_hash"] for a in manifest["artifacts"]) and
              len(manifest["artifacts"]) + 1 == count_files(os.path.join(dirs[0], run_id)),
              "%s: every artifact records the config hash" % name)
        check(out[0] == out[1] and tree_equal(os.path.join(dirs[0], run_id), os.path.join(dirs[1], run_id)),
              "%s: re-run is bit-identical (%d files)" % (name, count_files(dirs[0])))

    bad = cli("run", "-c", os.path.join(args.work, "missing.json"), "-d", os.path.join(args.work, "none"), ok=False)
    check(bad.returncode != 0 and "error" in bad.stderr, "run with a missing config fails with a message")
    cfg = json.load(open(mini, encoding="utf-8"))
    cfg["rumors"][0]["query"] = "genetically | (GMO"
    for key in ("corpus",):
        cfg[key] = os.path.join(os.path.dirname(mini), cfg[key])
    for sect in ("gazetteer", "lexicon", "features"):
        for k, v in cfg[sect].items():
            if isinstance(v, str) and k not in ("mode",):
                cfg[sect][k] = os.path.join(os.path.dirname(mini), v)
    cfg["annotation"]["truth"] = os.path.join(os.path.dirname(mini), cfg["annotation"]["truth"])
    broken = os.path.join(args.work, "broken.json")
    json.dump(cfg, open(broken, "w"))
    bad = cli("run", "-c", broken, "-d", os.path.join(args.work, "broken_run"), ok=False)
    print("  " + bad.stderr.strip().splitlines()[0])
    check(bad.returncode != 0 and "R1" in bad.stderr and not os.path.exists(os.path.join(args.work, "broken_run", "mini", "corpus")),
          "unparsable rumor query fails before ingest")

    # service over the first mini run
    data = os.path.join(args.work, "mini_a")
    srv = Server(args.cli, mini, data)
    try:
        st, body = srv.request("GET", "/health")
        check(st == 200 and body == {"status": "ok"}, "GET /health")

        cfg = json.load(open(mini, encoding="utf-8"))
        rumors = {r["id"]: r for r in cfg["rumors"]}
        for k in ("0", "10"):
            cli_json = json.loads(cli("query", "run", "-c", mini, "-n", "R1", "-k", k, "--json").stdout)
            st, body = srv.request("POST", "/queries/evaluate", {"query": rumors["R1"]["query"], "top_k": int(k)})
            check(st == 200 and body == cli_json and len(body["ids"]) == (body["count"] if k == "0" else 10),
                  "R1 top_k=%s: service and CLI return the same ids (%d)" % (k, len(body["ids"])))
        plain = cli("query", "run", "-c", mini).stdout.splitlines()
        per_rumor = collections.Counter(l.split("\t")[0] for l in plain)
        st, body = srv.request("GET", "/rumors")
        check(st == 200 and {r["id"]: r["hits"] for r in body["rumors"]} == dict(per_rumor),
              "GET /rumors hit counts equal CLI query run")

        st, body = srv.request("POST", "/queries/evaluate", {"query": "zika & (gmo"})
        parse = cli("query", "parse", "zika & (gmo", ok=False)
        check(st == 400 and body["error"]["code"] == "query_syntax" and body["error"]["position"] == 11 and
              parse.returncode != 0 and "position 11" in parse.stderr,
              "malformed query: 400 query_syntax at position 11, CLI exits non-zero")

        run_dir = os.path.join(data, "mini")
        st, body = srv.request("GET", "/runs/mini/report")
        check(st == 200 and body == json.load(open(os.path.join(run_dir, "report.json"), encoding="utf-8")),
              "GET /runs/mini/report equals report.json")
        st, body = srv.request("GET", "/runs/nope/report")
        check(st == 404 and body["error"]["code"] == "not_found", "unknown run is 404")
        with open(os.path.join(run_dir, "timeline", "R1.csv"), encoding="utf-8") as f:
            series = [l.strip().split(",") for l in list(f)[1:] if l.strip()]
        corr = {l.split(",")[0]: l.strip().split(",")[3] for l in
                list(open(os.path.join(run_dir, "timeline", "correlations.csv"), encoding="utf-8"))[1:]}
        st, body = srv.request("GET", "/rumors/R1/timeline")
        check(st == 200 and body["dates"] == [s[0] for s in series] and body["rumor"] == [int(s[1]) for s in series]
              and body["clarification"] == [int(s[2]) for s in series] and repr(body["r"]) == corr["R1"],
              "GET /rumors/R1/timeline matches the series file (%d points) and r" % len(series))

        # concurrent annotation by 10 workers, one of them failing gold
        truth = dict(l.strip().split("\t") for l in open(os.path.join(os.path.dirname(mini), cfg["annotation"]["truth"]),
                                                        encoding="utf-8") if l.strip())
        hits = json.loads(cli("query", "run", "-c", mini, "-n", "R3", "--json").stdout)["ids"]
        candidates = [h for h in hits if h in truth][:40]
        gold = [{"message_id": m, "label": truth[m]} for m in candidates[:8]]
        st, body = srv.request("POST", "/tasks", {"rumor_id": "R3", "candidates": candidates, "gold": gold,
                                                  "config": {"min_gold": 8, "min_gold_attempts": 2,
                                                             "gold_interval": 1}})
        check(st == 200 and body["task_id"] == "task-R3" and body["candidates"] == 40, "POST /tasks")
        st, again = srv.request("POST", "/tasks", {"rumor_id": "R3", "candidates": candidates, "gold": gold})
        check(st == 409, "creating the same task twice is 409")

        others = ["rumor", "clarification", "other"]
        results = {}
        lock = threading.Lock()
        w10_stopped = threading.Event()  # the others start once the failing worker is out

        def worker(k):
            wid = "w%02d" % k
            if k != 10:
                w10_stopped.wait()
            rng = random.Random(k)
            accuracy = 0.6 + 0.04 * k
            gold_ids = {g["message_id"] for g in gold}
            served = 0
            log = []
            while True:
                st, item = srv.request("GET", "/tasks/task-R3/next?worker=" + wid)
                if st != 200 or item["message_id"] is None:
                    reason = item.get("reason") if st == 200 else "http %d" % st
                    break
                served += 1
                mid = item["message_id"]
                right = k != 10 if mid in gold_ids else rng.random() < accuracy
                label = truth[mid] if right else rng.choice([l for l in others if l != truth[mid]])
                token = "%s-%d" % (wid, served)
                st, r = srv.request("POST", "/tasks/task-R3/judgments",
                                    {"worker": wid, "message_id": mid, "label": label, "token": token})
                log.append((st, r))
                if rng.random() < 0.2:  # a client retry with the same token
                    st2, r2 = srv.request("POST", "/tasks/task-R3/judgments",
                                          {"worker": wid, "message_id": mid, "label": label, "token": token})
                    log.append((st2, dict(r2, retry_of=r)))
            st, after = srv.request("POST", "/tasks/task-R3/judgments",
                                    {"worker": wid, "message_id": candidates[-1], "label": "rumor"})
            with lock:
                results[wid] = {"reason": reason, "log": log, "after": after}
            if k == 10:
                w10_stopped.set()

        threads = [threading.Thread(target=worker, args=(k,)) for k in range(10, 0, -1)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()

        retries = [e for r in results.values() for _, e in r["log"] if "retry_of" in e]
        check(all(e["replayed"] and e["seq"] == e["retry_of"]["seq"] for e in retries if e["status"] == "accepted"),
              "%d retried submissions replay the original seq" % len(retries))
        check(results["w10"]["reason"] == "banned" and results["w10"]["after"]["status"] == "rejected_banned",
              "the gold-failing worker halts with a ban and further judgments are rejected")
        check(all(r["reason"] != "banned" for w, r in results.items() if w != "w10"), "no other worker is banned")
        st, stats = srv.request("GET", "/tasks/task-R3/stats")
        log_path = os.path.join(data, "tasks", "task-R3.jsonl")
        events = [json.loads(l) for l in open(log_path, encoding="utf-8") if l.strip()]
        seqs = [e["seq"] for e in events[1:] if e["type"] == "judgment"]
        check(seqs == list(range(1, len(seqs) + 1)), "persisted log holds %d judgments with gapless seq" % len(seqs))
        want, banned, n = serial_replay(events)
        resolved = [l.rstrip("\n").split("\t") for l in cli("annot", "resolve", "-t", log_path).stdout.splitlines()[1:]]
        got = {r[0]: (r[1], r[2]) for r in resolved}
        check(got == want, "resolutions from the concurrent log equal a serial replay (%d resolved)" %
              sum(v[0] == "1" for v in want.values()))
        cli_stats = json.loads(cli("annot", "stats", "-t", log_path).stdout)
        check(stats["judgments"] == n == cli_stats["judgments"] and stats["banned_workers"] == len(banned) == 1 and
              {w["worker"] for w in stats["worker_records"] if w["banned"]} == banned and
              all(stats[k] == cli_stats[k] for k in ("resolved", "unresolved", "labels", "valid_judgments")),
              "GET stats equals the CLI over the persisted log")
        if failures and failures[-1].startswith("GET stats"):
            print(json.dumps(stats), json.dumps(cli_stats), n, banned)
    finally:
        srv.stop()

    # a restarted service picks the task up from its log
    srv = Server(args.cli, mini, data)
    try:
        st, again = srv.request("GET", "/tasks/task-R3/stats")
        check(st == 200 and again == stats, "restarted service reloads the task with identical stats")
    finally:
        srv.stop()

    print("%d failure(s)" % len(failures))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
