"""Independent oracle for the golden files.

Recomputes reports and cohort tables straight from the fixture JSONL with
plain Python, then writes them in the same layout the tool emits:

    python3 tests/golden/make_golden.py
"""
import json
import math
from pathlib import Path

HERE = Path(__file__).resolve().parent
FIXTURES = HERE.parent / "fixtures"
REFERENCE_YEAR = 2024
ALPHA, BETA, GAMMA = 0.5, 0.1, 1.5
DISCIPLINES = ["ComputerScience", "LifeSciences", "PhysicalSciences", "SocialSciences",
               "Engineering", "Humanities", "Other"]


def load(path):
    rs, ps, es = {}, {}, []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec["kind"] == "researcher":
            rs[rec["id"]] = rec
        elif rec["kind"] == "publication":
            ps[rec["id"]] = rec
        else:
            es.append((rec["citing"], rec["cited"]))
    return rs, ps, es


def orcid_key(o):
    o = o.strip()
    for prefix in ("https://orcid.org/", "http://orcid.org/", "orcid.org/"):
        if o.lower().startswith(prefix):
            o = o[len(prefix):]
    return o.upper()


def same(rs, a, b):
    if a == b:
        return True
    oa, ob = rs[a]["orcid"], rs[b]["orcid"]
    return bool(oa and ob and orcid_key(oa) == orcid_key(ob))


def h_index(counts):
    # Largest h with at least h entries >= h, by direct predicate check.
    return max(h for h in range(len(counts) + 1) if sum(1 for c in counts if c >= h) >= h)


def ratio(s, t):
    return s / t if t else 0.0


def scai(h, scr):
    if scr <= BETA:
        return float(h)
    return max(0.0, h - ALPHA * (scr - BETA) ** GAMMA * h)


def report(rs, ps, es, rid):
    owned = sorted(p for p in ps if rid in ps[p]["authors"])
    totals, selfs, years = [], [], {}
    for p in owned:
        t = s = 0
        for citing, cited in es:
            if cited != p:
                continue
            is_self = any(same(rs, rid, a) for a in ps[citing]["authors"])
            t += 1
            s += is_self
            y = years.setdefault(ps[citing]["year"], [0, 0])
            y[0] += 1
            y[1] += is_self
        totals.append(t)
        selfs.append(s)
    externals = [t - s for t, s in zip(totals, selfs)]
    h, h_ext = h_index(totals), h_index(externals)
    scr = ratio(sum(selfs), sum(totals))
    return {
        "researcher_id": rid,
        "h_index": h,
        "h_index_external": h_ext,
        "i10_index": sum(1 for t in totals if t >= 10),
        "total_citations": sum(totals),
        "self_citations": sum(selfs),
        "scr": scr,
        "scai": scai(h, scr),
        "s_index": h_index(selfs),
        "inflation": (h - h_ext) / h_ext if h_ext else None,
        "yearly_scr": {str(y): ratio(v[1], v[0]) for y, v in sorted(years.items())},
    }


def first_year(rs, ps, rid):
    if rs[rid]["first_pub_year"] is not None:
        return rs[rid]["first_pub_year"]
    years = [p["year"] for p in ps.values() if rid in p["authors"]]
    return min(years) if years else None


def stage(first):
    if first is None:
        return "Unreported"
    d = REFERENCE_YEAR - first
    return "EarlyCareer" if d < 10 else "MidCareer" if d <= 20 else "Senior"


def cohort_csv(reports, key, order):
    groups = {}
    for r in sorted(reports, key=lambda r: r["researcher_id"]):
        groups.setdefault(key(r["researcher_id"]), []).append(r)
    lines = ["group,avg_scr,mean_inflation_pct,n"]
    for g in order:
        if g not in groups:
            continue
        members = groups[g]
        scr = 0.0
        for m in members:
            scr += m["scr"]
        infl, k = 0.0, 0
        for m in members:
            if m["inflation"] is not None:
                infl += m["inflation"]
                k += 1
        pct = "%.2f" % (infl / k * 100.0) if k else ""
        lines.append("%s,%.4f,%s,%d" % (g, scr / len(members), pct, len(members)))
    return "\n".join(lines) + "\n"


def dump(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def main():
    rs, ps, es = load(FIXTURES / "e2e_corpus.jsonl")
    reports = [report(rs, ps, es, rid) for rid in sorted(rs)]
    out = HERE / "e2e"
    out.mkdir(exist_ok=True)
    (out / "reports.json").write_text(dump(reports), encoding="utf-8")
    (out / "cohort_discipline.csv").write_text(
        cohort_csv(reports, lambda r: rs[r]["discipline"], DISCIPLINES), encoding="utf-8")
    (out / "cohort_gender.csv").write_text(
        cohort_csv(reports, lambda r: rs[r]["gender"] or "Unreported", ["male", "female", "Unreported"]),
        encoding="utf-8")
    (out / "cohort_career_stage.csv").write_text(
        cohort_csv(reports, lambda r: stage(first_year(rs, ps, r)),
                   ["EarlyCareer", "MidCareer", "Senior", "Unreported"]),
        encoding="utf-8")

    rs, ps, es = load(FIXTURES / "researcher_mid.jsonl")
    (HERE / "researcher_mid_report.json").write_text(dump(report(rs, ps, es, "mid")), encoding="utf-8")


if __name__ == "__main__":
    main()
