"""Independent reference implementations used to cross-check the engine.

Everything here works directly on raw interchange dictionaries (the parsed
JSON form) with plain loops, and deliberately imports nothing from the
package under test. Written before the engine; kept brute-force on purpose.
"""

from fractions import Fraction

LEVEL_RANK = {"L": 0, "M": 1, "H": 2}


def _ordinal_ids(kb_doc):
    return {f["id"] for f in kb_doc["ordinalFeatures"]}


def _boolean_ids(kb_doc):
    return {f["id"] for f in kb_doc["booleanFeatures"]}


def oracle_supports(kb_doc, platform_id, requirement):
    """Does the platform support this requirement's feature (at level)?"""
    fid = requirement["featureId"]
    if fid in _boolean_ids(kb_doc):
        return kb_doc["bfp"][fid][platform_id] == 1
    if fid in _ordinal_ids(kb_doc):
        have = LEVEL_RANK[kb_doc["nfp"][fid][platform_id]]
        need = LEVEL_RANK[requirement["requiredLevel"]]
        return have >= need
    raise KeyError(fid)


def oracle_filter(kb_doc, case_doc):
    """Feasibility by exhaustive per-(platform, requirement) checks.

    Returns (feasible_ids: set, violations: {platform_id: set (featureId, kind)}).
    """
    feasible = set()
    violations = {}
    for platform in kb_doc["platforms"]:
        pid = platform["id"]
        found = set()
        for req in case_doc["requirements"]:
            if req["priority"] == "must":
                if not oracle_supports(kb_doc, pid, req):
                    if req["featureId"] in _ordinal_ids(kb_doc):
                        found.add((req["featureId"], "LevelBelowMust"))
                    else:
                        found.add((req["featureId"], "MissingMust"))
            elif req["priority"] == "wont":
                if oracle_supports(kb_doc, pid, req):
                    found.add((req["featureId"], "PresentWont"))
        if found:
            violations[pid] = found
        else:
            feasible.add(pid)
    return feasible, violations


def oracle_score(kb_doc, case_doc, platform_id):
    """Weighted soft-constraint score as an exact Fraction in [0, 100]."""
    w_should = Fraction(str(case_doc["weights"]["wShould"]))
    w_could = Fraction(str(case_doc["weights"]["wCould"]))
    got = Fraction(0)
    total = Fraction(0)
    for req in case_doc["requirements"]:
        if req["priority"] == "should":
            weight = w_should
        elif req["priority"] == "could":
            weight = w_could
        else:
            continue
        total += weight
        if oracle_supports(kb_doc, platform_id, req):
            got += weight
    if total == 0:
        return Fraction(100)
    return 100 * got / total


def oracle_quality_breakdown(kb_doc, case_doc, platform_id):
    """Per-quality rescoring over the soft requirements each quality maps to."""
    qf = kb_doc["qf"]
    out = {}
    for quality in kb_doc["qualities"]:
        qid = quality["id"]
        mapped = {fid for fid, flag in qf.get(qid, {}).items() if flag == 1}
        reqs = [
            r
            for r in case_doc["requirements"]
            if r["priority"] in ("should", "could") and r["featureId"] in mapped
        ]
        if not reqs:
            continue
        restricted = dict(case_doc)
        restricted["requirements"] = reqs
        out[qid] = oracle_score(kb_doc, restricted, platform_id)
    return out


def oracle_coverage(kb_doc, feature_id):
    """Percent of platforms with a 1 in the Boolean support row."""
    row = kb_doc["bfp"][feature_id]
    n = len(kb_doc["platforms"])
    ones = sum(1 for p in kb_doc["platforms"] if row[p["id"]] == 1)
    return 100.0 * ones / n


def oracle_hard_support_counts(kb_doc, case_doc):
    """Vulnerability counts by full matrix scan.

    Returns {featureId: admitted} over Must/Wont requirements, where admitted is
    the number of platforms the constraint lets through.
    """
    counts = {}
    for req in case_doc["requirements"]:
        if req["priority"] not in ("must", "wont"):
            continue
        n = 0
        for platform in kb_doc["platforms"]:
            supported = oracle_supports(kb_doc, platform["id"], req)
            if req["priority"] == "must" and supported:
                n += 1
            if req["priority"] == "wont" and not supported:
                n += 1
        counts[req["featureId"]] = n
    return counts


def oracle_vulnerability_order(kb_doc, case_doc):
    """Hard requirements, most vulnerable first; ties by feature id."""
    counts = oracle_hard_support_counts(kb_doc, case_doc)
    return sorted(counts, key=lambda fid: (counts[fid], fid))
