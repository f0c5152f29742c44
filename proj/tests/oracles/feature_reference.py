#!/usr/bin/env python3
"""Straight-line reference for the 48 message features.

Deliberately shares no code with the C++ extractor. Reads the features50
fixture plus the shared tables and prints the expected matrix as CSV.
"""
import argparse
import datetime as dt
import json
import math
import os
import sys

SLOTS = [
    "IS_RETWEET", "FOLLOWING", "FOLLOWERS", "STATUS_COUNT", "AGE", "HAS_MENTIONS", "HAS_HASHTAG", "COUNT_HASHTAG",
    "DAY_WEEKDAY", "COUNT_URLS", "COUNT_RT", "COUNTRY", "SENTIMENT_SCORE", "POSITIVE_WORDS", "NEGATIVE_WORDS",
    "EMOTICONS_POS", "EMOTICONS_NEG", "QUESTION_MARK", "EXCLAMATION_MARK", "WORDS_COUNT", "COUNT_SENTENCES",
    "CHAR_COUNT", "UPPER_COUNT", "PERCENTAGE_UPPER", "PERCENTAGE_UPPER_LOWER", "MULTIPLE_QUES_EXCL", "COUNT_NOUN",
    "COUNT_ADVERB", "COUNT_ADJECTIVE", "COUNT_VERB", "COUNT_PRONOUN", "HAS_PRONOUN_1", "HAS_PRONOUN_2",
    "HAS_PRONOUN_3", "COMPLEX_WORDS", "FLESCH", "AUTOMATED", "FLESCH_KINCAID", "GUNNING", "SMOG",
    "COUNT_NOT_IN_VOCAB", "AVG_SYLLABLES", "MEDICAL_LEXICON", "WIKIPEDIA_DOMAIN", "ADVOCACY", "NEWS", "SOCIAL",
    "INFORMATIVE",
]

SPACE = " \t\n\r\v\f"
NAME = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")
DIGITS = set("0123456789")

PERSON = {}
for w in "i me my mine myself we us our ours ourselves".split():
    PERSON[w] = 1
for w in "you your yours yourself yourselves u ur".split():
    PERSON[w] = 2
for w in "he him his himself she her hers herself it its itself they them their theirs themselves".split():
    PERSON[w] = 3

SUFFIXES = [("ing", "VERB"), ("ed", "VERB"), ("ize", "VERB"), ("ise", "VERB"), ("ify", "VERB"), ("ly", "ADV"),
            ("ous", "ADJ"), ("ful", "ADJ"), ("ive", "ADJ"), ("able", "ADJ"), ("ible", "ADJ"), ("less", "ADJ"),
            ("ical", "ADJ"), ("ish", "ADJ"), ("al", "ADJ"), ("ic", "ADJ")]

SYLLABLE_EXCEPTIONS = {"the": 1, "area": 3, "idea": 3, "people": 2, "being": 2, "business": 2, "every": 2,
                       "wednesday": 2, "queue": 1, "science": 2, "zika": 2, "ebola": 3, "vaccine": 2, "naive": 2,
                       "poem": 2}


def rows(path):
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            out.append(line.split("\t"))
    return out


def timestamp(s):
    return int(dt.datetime.strptime(s, "%Y-%m-%dT%H:%M:%SZ").replace(tzinfo=dt.timezone.utc).timestamp())


# --- text cleaning ---------------------------------------------------------

def strip_urls(t):
    out = []
    i = 0
    while i < len(t):
        low = t[i:i + 8].lower()
        if low.startswith("http://") or low.startswith("https://"):
            while i < len(t) and t[i] not in SPACE:
                i += 1
            continue
        out.append(t[i])
        i += 1
    return "".join(out)


def rt_marker(t):
    i = 0
    while i < len(t) and t[i] in SPACE:
        i += 1
    if t[i:i + 2].lower() != "rt":
        return 0
    i += 2
    if i >= len(t) or t[i] not in SPACE:
        return 0
    while i < len(t) and t[i] in SPACE:
        i += 1
    if i < len(t) and t[i] == "@":
        j = i + 1
        while j < len(t) and t[j] in NAME:
            j += 1
        if j > i + 1:
            k = j
            while k < len(t) and t[k] in SPACE:
                k += 1
            if k < len(t) and t[k] == ":":
                i = k + 1
    return i


def strip_mentions(t):
    out = []
    i = 0
    while i < len(t):
        if t[i] == "@" and (i == 0 or t[i - 1] not in NAME) and i + 1 < len(t) and t[i + 1] in NAME:
            i += 1
            while i < len(t) and t[i] in NAME:
                i += 1
            continue
        out.append(t[i])
        i += 1
    return "".join(out)


def keep_and_collapse(t):
    out = []
    pending = False
    for c in t:
        if c in SPACE:
            pending = len(out) > 0
            continue
        if not (c.isalpha() or c in DIGITS or c in "#.,?"):
            continue
        if pending:
            out.append(" ")
        pending = False
        out.append(c)
    return "".join(out)


def clean(text):
    cur = text
    while True:
        t = strip_urls(cur)
        n = rt_marker(t)
        if n:
            t = t[n:]
        t = keep_and_collapse(strip_mentions(t))
        if t == cur:
            return cur
        cur = t


def words_of(canonical):
    out = []
    tok = ""
    for c in canonical + " ":
        if c in SPACE or c in ".,?":
            if tok.strip("#"):
                w = tok.lstrip("#")
                if w:
                    out.append(w)
            tok = ""
        else:
            tok += c.lower()
    return out


# --- counts ----------------------------------------------------------------

def wordish(c):
    return c.isalpha() or c in DIGITS or c == "_"


def marked(raw, marker):
    n = 0
    for i in range(len(raw) - 1):
        if raw[i] == marker and not (i > 0 and wordish(raw[i - 1])) and wordish(raw[i + 1]):
            n += 1
    return n


def syllables(word):
    w = "".join(c.lower() for c in word if c.isascii() and c.isalpha())
    if w in SYLLABLE_EXCEPTIONS:
        return SYLLABLE_EXCEPTIONS[w]
    groups = 0
    prev = False
    for c in w:
        v = c in "aeiouy"
        if v and not prev:
            groups += 1
        prev = v
    if len(w) >= 2 and w[-1] == "e" and groups > 1:
        if not (len(w) >= 3 and w[-2] == "l" and w[-3] not in "aeiouy"):
            groups -= 1
    return max(groups, 1)


def sentences(raw):
    count = 0
    content = False
    i = 0
    while i < len(raw):
        c = raw[i]
        if c in ".!?":
            j = i
            while j < len(raw) and raw[j] in ".!?":
                j += 1
            if j == len(raw) or raw[j] in SPACE:
                if content:
                    count += 1
                content = False
            i = j
            continue
        if c.isalpha() or c in DIGITS:
            content = True
        i += 1
    return count + (1 if content else 0)


def tag_of(word, tags):
    if word in PERSON:
        return "PRON"
    if word in tags:
        return tags[word]
    if any(c in DIGITS for c in word):
        return "OTHER"
    for suffix, tag in SUFFIXES:
        if len(word) > len(suffix) + 2 and word.endswith(suffix):
            return tag
    return "NOUN"


def lexicon_tokens(text):
    out = []
    for chunk in text.split():
        if any(c in DIGITS for c in chunk):
            continue
        tok = "".join(c.lower() for c in chunk if c.isalpha())
        if tok:
            out.append(tok)
    return out


# --- urls ------------------------------------------------------------------

def host_of(url):
    url = url.strip()
    if "://" in url:
        url = url[url.index("://") + 3:]
    for i, c in enumerate(url):
        if c in "/?#":
            url = url[:i]
            break
    if "@" in url:
        url = url[url.rindex("@") + 1:]
    if ":" in url:
        url = url[:url.index(":")]
    for c in url:
        if not (c.isascii() and c.isalnum()) and c not in "-." and ord(c) < 0x80:
            return None
    h = url.lower().rstrip(".")
    if h.startswith("www."):
        h = h[4:]
    if not h or h.startswith(".") or ".." in h:
        return None
    return h


def expand(url, redirects, max_depth=10):
    seen = {url}
    cur = url
    hops = 0
    while cur in redirects:
        nxt = redirects[cur]
        if nxt in seen or hops == max_depth:
            return host_of(url) or ""
        seen.add(nxt)
        hops += 1
        cur = nxt
    return host_of(cur) or ""


def domain_counts(host, classes, wiki):
    labels = host.split(".")
    cls = None
    wik = False
    for start in range(len(labels)):
        key = ".".join(labels[start:])
        if cls is None and key in classes:
            cls = classes[key]
        if key in wiki:
            wik = True
        if len(labels) - start <= 2:
            break
    return cls, wik


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--fixture", required=True)
    ap.add_argument("--tables", required=True)
    args = ap.parse_args()

    pos_words, neg_words, emo_pos, emo_neg = set(), set(), set(), set()
    for entry, kind in rows(os.path.join(args.tables, "sentiment.tsv")):
        {"positive": pos_words, "negative": neg_words, "emoticon_pos": emo_pos, "emoticon_neg": emo_neg}[kind].add(
            entry.lower() if kind in ("positive", "negative") else entry)
    tags = {}
    for word, tag in rows(os.path.join(args.tables, "tags.tsv")):
        tags[word.lower()] = tag if tag in ("NOUN", "VERB", "ADJ", "ADV", "PRON") else "OTHER"
    vocab = {r[0].lower() for r in rows(os.path.join(args.tables, "vocabulary.txt"))}
    classes = {}
    for dom, cls in rows(os.path.join(args.tables, "domains.tsv")):
        classes[host_of(dom)] = "informative" if cls == "informational" else cls
    wiki = {host_of(r[0]) for r in rows(os.path.join(args.tables, "wikipedia_domains.txt"))}
    redirects = {a: b for a, b in rows(os.path.join(args.tables, "redirects.tsv"))}
    medical = {r[0] for r in rows(os.path.join(args.fixture, "medical_words.txt"))}
    country_list = sorted(r[0] for r in rows(os.path.join(args.fixture, "country_list.txt")))
    countries = {}
    with open(os.path.join(args.fixture, "countries.tsv"), encoding="utf-8") as f:
        for line in f:
            mid, code = line.rstrip("\n").split("\t")
            countries[mid] = code

    out = sys.stdout
    out.write("message_id," + ",".join(SLOTS) + "\n")
    with open(os.path.join(args.fixture, "messages.jsonl"), encoding="utf-8") as f:
        messages = [json.loads(line) for line in f if line.strip()]
    for m in messages:
        raw = m["text"]
        canonical = clean(raw)
        words = words_of(canonical)
        v = {}
        v["IS_RETWEET"] = int(bool(m.get("is_retweet")) or rt_marker(raw) > 0)
        v["FOLLOWING"] = m["author_following"]
        v["FOLLOWERS"] = m["author_followers"]
        v["STATUS_COUNT"] = m["author_status_count"]
        created = timestamp(m["created_at"])
        v["AGE"] = (created - timestamp(m["author_account_created"])) // 86400
        v["HAS_MENTIONS"] = int(bool(m.get("mentions")) or marked(raw, "@") > 0)
        tags_n = marked(raw, "#")
        v["HAS_HASHTAG"] = int(tags_n > 0)
        v["COUNT_HASHTAG"] = tags_n
        v["DAY_WEEKDAY"] = dt.datetime.fromtimestamp(created, dt.timezone.utc).isoweekday()
        urls = m.get("urls") or [t for t in raw.split() if t[:8].lower().startswith(("http://", "https://"))]
        v["COUNT_URLS"] = len(urls)
        v["COUNT_RT"] = m["retweet_count"]
        code = countries.get(m["id"], "")
        v["COUNTRY"] = country_list.index(code) + 1 if code in country_list else 0

        p = sum(1 for w in words if w in pos_words)
        n = sum(1 for w in words if w in neg_words)
        ep = sum(1 for t in raw.split() if t in emo_pos)
        en = sum(1 for t in raw.split() if t in emo_neg)
        v["SENTIMENT_SCORE"] = (p - n + ep - en) / max(1, len(words))
        v["POSITIVE_WORDS"], v["NEGATIVE_WORDS"], v["EMOTICONS_POS"], v["EMOTICONS_NEG"] = p, n, ep, en

        q = raw.count("?")
        e = raw.count("!")
        up = sum(1 for c in raw if c.isupper())
        lo = sum(1 for c in raw if c.islower())
        s = sentences(raw)
        v["QUESTION_MARK"] = int(q > 0)
        v["EXCLAMATION_MARK"] = int(e > 0)
        v["WORDS_COUNT"] = len(words)
        v["COUNT_SENTENCES"] = s
        v["CHAR_COUNT"] = len(raw)
        v["UPPER_COUNT"] = up
        v["PERCENTAGE_UPPER"] = 100.0 * up / len(raw) if raw else 0.0
        v["PERCENTAGE_UPPER_LOWER"] = 100.0 * up / (up + lo) if up + lo else 0.0
        v["MULTIPLE_QUES_EXCL"] = int(q + e >= 2)

        tag_list = [tag_of(w, tags) for w in words]
        v["COUNT_NOUN"] = tag_list.count("NOUN")
        v["COUNT_ADVERB"] = tag_list.count("ADV")
        v["COUNT_ADJECTIVE"] = tag_list.count("ADJ")
        v["COUNT_VERB"] = tag_list.count("VERB")
        v["COUNT_PRONOUN"] = tag_list.count("PRON")
        persons = {PERSON.get(w, 0) for w in words}
        v["HAS_PRONOUN_1"], v["HAS_PRONOUN_2"], v["HAS_PRONOUN_3"] = (int(k in persons) for k in (1, 2, 3))

        syl = [syllables(w) for w in words]
        cplx = sum(1 for x in syl if x >= 3)
        if words and s:
            W = len(words)
            chars = sum(1 for w in words for c in w if c.isalpha() or c in DIGITS)
            v["COMPLEX_WORDS"] = cplx
            v["FLESCH"] = 206.835 - 1.015 * (W / s) - 84.6 * (sum(syl) / W)
            v["AUTOMATED"] = 4.71 * (chars / W) + 0.5 * (W / s) - 21.43
            v["FLESCH_KINCAID"] = 0.39 * (W / s) + 11.8 * (sum(syl) / W) - 15.59
            v["GUNNING"] = 0.4 * (W / s + 100.0 * cplx / W)
            v["SMOG"] = 1.043 * math.sqrt(cplx * 30.0 / s) + 3.1291
            v["AVG_SYLLABLES"] = sum(syl) / W
        else:
            for k in ("COMPLEX_WORDS", "FLESCH", "AUTOMATED", "FLESCH_KINCAID", "GUNNING", "SMOG", "AVG_SYLLABLES"):
                v[k] = 0
        v["COUNT_NOT_IN_VOCAB"] = sum(1 for w in words if w.lower() not in vocab)
        v["MEDICAL_LEXICON"] = sum(1 for t in lexicon_tokens(canonical) if t in medical)

        for k in ("WIKIPEDIA_DOMAIN", "ADVOCACY", "NEWS", "SOCIAL", "INFORMATIVE"):
            v[k] = 0
        for u in urls:
            host = expand(u, redirects)
            if not host:
                continue
            cls, wik = domain_counts(host, classes, wiki)
            v["WIKIPEDIA_DOMAIN"] += int(wik)
            key = {"advocacy": "ADVOCACY", "news": "NEWS", "social_media": "SOCIAL", "informative": "INFORMATIVE"}
            if cls in key:
                v[key[cls]] += 1
        out.write(m["id"] + "," + ",".join(repr(v[k]) for k in SLOTS) + "\n")


if __name__ == "__main__":
    main()
