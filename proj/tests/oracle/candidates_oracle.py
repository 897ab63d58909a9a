#!/usr/bin/env python3
"""Independent enumeration of cognate and false-friend candidates.

Written straight from the extraction rules, sharing no code with the C++
library: plain dynamic programming, collections.Counter shingles and hashlib.
Writes one CSV per task and language pair into the output directory.
"""
import argparse
import collections
import hashlib
import math
import pathlib

HEADER = "pair_id,source_lang,target_lang,source_word,target_word,synset_src,synset_tgt,ned,cosine,jaro_winkler,phonetic"


def canonical(word):
    out = []
    for ch in word:
        cp = ord(ch)
        if 0x0900 <= cp <= 0x0D7F:
            cp = 0x0900 + (cp - 0x0900) % 0x80
        out.append(cp)
    return tuple(out)


def read_wordnet(path):
    table = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        lemmas = [w.strip() for w in fields[2].split(",") if w.strip()]
        table[int(fields[0])] = (fields[1], lemmas)
    return table


def levenshtein(a, b, cost=lambda x, y: 0 if x == y else 1):
    d = [[0.0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i in range(len(a) + 1):
        d[i][0] = i
    for j in range(len(b) + 1):
        d[0][j] = j
    for i in range(1, len(a) + 1):
        for j in range(1, len(b) + 1):
            d[i][j] = min(d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost(a[i - 1], b[j - 1]))
    return d[len(a)][len(b)]


def ned(a, b):
    longest = max(len(a), len(b))
    return (longest - int(levenshtein(a, b))) / longest


def shingles(word, n):
    if len(word) < n:
        word = (-1,) * (n - 1) + word + (-1,) * (n - 1)
    return collections.Counter(word[i:i + n] for i in range(len(word) - n + 1))


def cosine(a, b, n):
    ca, cb = shingles(a, n), shingles(b, n)
    if not ca or not cb:
        return 1.0 if not ca and not cb else 0.0
    dot = sum(c * cb[g] for g, c in ca.items())
    na = sum(c * c for c in ca.values())
    nb = sum(c * c for c in cb.values())
    return min(1.0, dot / math.sqrt(float(na) * float(nb)))


def jaro_winkler(a, b):
    if (len(a), a) > (len(b), b):
        a, b = b, a
    if not a:
        return 1.0 if not b else 0.0
    window = max(max(len(a), len(b)) // 2 - 1, 0)
    used = [False] * len(b)
    matched_a = []
    for i, ch in enumerate(a):
        for j in range(max(0, i - window), min(len(b), i + window + 1)):
            if not used[j] and b[j] == ch:
                used[j] = True
                matched_a.append(ch)
                break
    m = len(matched_a)
    if m == 0:
        return 0.0
    matched_b = [b[j] for j in range(len(b)) if used[j]]
    t = sum(x != y for x, y in zip(matched_a, matched_b)) // 2
    jaro = (m / len(a) + m / len(b) + (m - t) / m) / 3.0
    prefix = 0
    while prefix < 4 and prefix < len(a) and a[prefix] == b[prefix]:
        prefix += 1
    return min(1.0, jaro + prefix * 0.1 * (1.0 - jaro))


def read_features(path):
    rows = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if line.startswith("#") or line.startswith("offset"):
            continue
        fields = line.split("\t")
        rows[0x0900 + int(fields[0], 16)] = [float(x) for x in fields[1:]]
    return rows


def phonetic(a, b, features):
    zero = [0.0] * 38

    def cost(x, y):
        if x == y:
            return 0.0
        vx, vy = features.get(x, zero), features.get(y, zero)
        dot = sum(p * q for p, q in zip(vx, vy))
        nx = sum(p * p for p in vx)
        ny = sum(q * q for q in vy)
        if nx == 0 or ny == 0:
            return 1.0
        return min(1.0, max(0.0, 1.0 - dot / math.sqrt(nx * ny)))

    return min(1.0, max(0.0, 1.0 - levenshtein(a, b, cost) / max(len(a), len(b))))


def row(src, tgt, sw, tw, ss, st, n, features):
    a, b = canonical(sw), canonical(tw)
    key = f"{src}\t{tgt}\t{sw}\t{tw}\t{ss}\t{st}"
    pid = hashlib.sha256(key.encode("utf-8")).hexdigest()[:16]
    scores = [ned(a, b), cosine(a, b, n), jaro_winkler(a, b), phonetic(a, b, features)]
    return ",".join([pid, src, tgt, sw, tw, str(ss), str(st)] + [f"{x:.4f}" for x in scores])


def single_words(lemmas):
    return [w for w in lemmas if " " not in w and "\t" not in w]


def cognates(src, tgt, ws, wt, threshold, n, features):
    found = []
    for sid in sorted(set(ws) & set(wt)):
        if ws[sid][0] != wt[sid][0]:
            continue
        for sw in single_words(ws[sid][1]):
            for tw in single_words(wt[sid][1]):
                a, b = canonical(sw), canonical(tw)
                if ned(a, b) >= threshold and cosine(a, b, n) >= threshold:
                    found.append((sid, sw, tw))
    found = sorted(set(found), key=lambda r: (r[0], r[1].encode(), r[2].encode()))
    return [row(src, tgt, sw, tw, sid, sid, n, features) for sid, sw, tw in found]


def spelling_sets(wordnet):
    ids, first_lemma = collections.defaultdict(set), {}
    for sid, (_, lemmas) in wordnet.items():
        for w in single_words(lemmas):
            ids[canonical(w)].add(sid)
            first_lemma.setdefault((canonical(w), sid), w)
    return ids, first_lemma


def false_friends(src, tgt, ws, wt, n, features):
    sp, lp = spelling_sets(ws)
    sq, lq = spelling_sets(wt)
    found = []
    for spelling in set(sp) & set(sq):
        if sp[spelling] & sq[spelling]:
            continue  # identical or overlapping senses: not a false friend
        for p in sp[spelling]:
            for q in sq[spelling]:
                found.append((p, q, lp[(spelling, p)], lq[(spelling, q)]))
    found.sort(key=lambda r: (r[0], r[1], r[2].encode(), r[3].encode()))
    return [row(src, tgt, sw, tw, p, q, n, features) for p, q, sw, tw in found]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--wordnet-dir", required=True, type=pathlib.Path)
    parser.add_argument("--features", required=True, type=pathlib.Path)
    parser.add_argument("--out", required=True, type=pathlib.Path)
    parser.add_argument("--source", default="hi")
    parser.add_argument("--targets", default="mr,bn")
    parser.add_argument("--threshold", type=float, default=0.7)
    parser.add_argument("--shingle-n", type=int, default=2)
    args = parser.parse_args()

    features = read_features(args.features)
    ws = read_wordnet(args.wordnet_dir / f"{args.source}.wordnet.tsv")
    args.out.mkdir(parents=True, exist_ok=True)
    for tgt in args.targets.split(","):
        wt = read_wordnet(args.wordnet_dir / f"{tgt}.wordnet.tsv")
        for stem, rows in (
            ("cognates", cognates(args.source, tgt, ws, wt, args.threshold, args.shingle_n, features)),
            ("falsefriends", false_friends(args.source, tgt, ws, wt, args.shingle_n, features)),
        ):
            text = "\n".join([HEADER] + rows) + "\n"
            (args.out / f"{stem}.{args.source}-{tgt}.csv").write_bytes(text.encode("utf-8"))


if __name__ == "__main__":
    main()
