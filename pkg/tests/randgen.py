"""Deterministic random (kb_doc, case_doc) instance generator.

Produces raw interchange dictionaries so that both the engine (via the
loader) and the oracles (directly) consume the same source of truth.
"""

import random

LEVELS = ("L", "M", "H")
SOURCE_MODELS = ("ISO-25010", "EXT-9126", "custom")


def random_kb_doc(rng: random.Random, max_platforms=30, max_features=100):
    n_platforms = rng.randint(1, max_platforms)
    n_features = rng.randint(1, max_features)
    n_ordinal = rng.randint(0, min(5, n_features))
    n_boolean = n_features - n_ordinal
    n_qualities = rng.randint(0, 4)

    platforms = [
        {"id": f"p{i:02d}", "name": f"Platform {i}", "links": [], "notes": ""}
        for i in range(n_platforms)
    ]
    boolean_features = [
        {
            "id": f"b{i:03d}",
            "name": f"Boolean feature {i}",
            "category": rng.choice(["governance", "treasury/tokens", "infra/contracts/core"]),
            "description": "",
        }
        for i in range(n_boolean)
    ]
    ordinal_features = [
        {
            "id": f"o{i:03d}",
            "name": f"Ordinal feature {i}",
            "parameters": ["proxy metric"],
            "scale": ["Low", "Medium", "High"],
        }
        for i in range(n_ordinal)
    ]
    qualities = [
        {
            "id": f"q{i}",
            "name": f"Quality {i}",
            "definition": "",
            "sourceModel": rng.choice(SOURCE_MODELS),
        }
        for i in range(n_qualities)
    ]
    bfp = {
        f["id"]: {p["id"]: rng.randint(0, 1) for p in platforms}
        for f in boolean_features
    }
    nfp = {
        f["id"]: {p["id"]: rng.choice(LEVELS) for p in platforms}
        for f in ordinal_features
    }
    all_feature_ids = [f["id"] for f in boolean_features + ordinal_features]
    qf = {}
    for q in qualities:
        if not all_feature_ids:
            continue
        picked = rng.sample(all_feature_ids, rng.randint(0, min(8, len(all_feature_ids))))
        if picked:
            qf[q["id"]] = {fid: 1 for fid in picked}

    return {
        "version": f"rand-{rng.randint(0, 10**6)}",
        "platforms": platforms,
        "booleanFeatures": boolean_features,
        "ordinalFeatures": ordinal_features,
        "qualities": qualities,
        "bfp": bfp,
        "nfp": nfp,
        "qf": qf,
    }


def random_case_doc(rng: random.Random, kb_doc, hard_bias=0.5):
    """Random requirement set over the KB's features.

    hard_bias skews priority draws toward Must/Wont so infeasible cases occur
    often enough to exercise violations and relaxation.
    """
    boolean_ids = [f["id"] for f in kb_doc["booleanFeatures"]]
    ordinal_ids = [f["id"] for f in kb_doc["ordinalFeatures"]]
    pool = boolean_ids + ordinal_ids
    n_reqs = rng.randint(0, len(pool))
    chosen = rng.sample(pool, n_reqs)
    requirements = []
    for fid in chosen:
        ordinal = fid in set(ordinal_ids)
        if rng.random() < hard_bias:
            priority = "must" if ordinal else rng.choice(["must", "wont"])
        else:
            priority = rng.choice(["should", "could", "none"])
        req = {"featureId": fid, "priority": priority}
        if ordinal:
            req["requiredLevel"] = rng.choice(LEVELS)
        requirements.append(req)
    w_could = rng.randint(1, 5)
    w_should = rng.randint(w_could, 10)
    return {
        "id": f"case-{rng.randint(0, 10**6)}",
        "name": "randomized case",
        "organizationNotes": "",
        "kbVersion": kb_doc["version"],
        "weights": {"wShould": w_should, "wCould": w_could},
        "requirements": requirements,
    }
