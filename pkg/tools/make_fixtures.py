"""Regenerate the bundled fixtures and verify their calibration targets.

Writes into src/querykg/fixtures/:
  einstein_docs.jsonl / einstein_coref.jsonl / einstein_query.txt
  web50_docs.jsonl / web50_query.txt / web50_target.txt
  questions20.jsonl

Every fixture is checked against the behavior the test suite relies on
(compression ratio, sweep inequalities, baseline-vs-graph coverage wins);
the script fails loudly if a regeneration drifts out of calibration.

Run from the repository root:  python3 tools/make_fixtures.py
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import querykg as qk
from querykg.analysis import compression, coverage, hits_sweep, tfidf_extract
from querykg.config import PipelineConfig
from querykg.kgraph import fit_model

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "querykg" / "fixtures"

EINSTEIN_QUERY = "why did albert einstein win the nobel prize"

EINSTEIN_DOCS = [
    {
        "doc_id": "doc1",
        "rank": 1,
        "text": (
            "Albert Einstein, a German theoretical physicist, won the Nobel Prize. "
            "He received the Nobel Prize."
        ),
    },
    {
        "doc_id": "doc2",
        "rank": 2,
        "text": (
            "Albert Einstein developed the theory of relativity. "
            "Albert Einstein was born in Germany."
        ),
    },
]

EINSTEIN_COREF = [
    {
        "doc_id": "doc1",
        "canonical": "Albert Einstein",
        "mentions": [{"sent": 1, "start": 0, "end": 0}],
    }
]

WEB50_QUERY = "how do honeybees communicate the location of food"

WEB50_TARGET = (
    "honeybees communicate the location of food "
    "and perform the waggle dance to communicate the location of food "
    "honeybees encode the distance of the food in the duration of the dance "
    "collect the nectar and carry the food to the location of the flowers "
    "follow the dance to the location of the flowers and the food "
    "share the location of the food inside the hive "
    "build the honeycomb to store the food and communicate the location "
    "mark the route to the food and communicate the location "
    "show the direction to the location of the food with the sun "
    "and signal the angle to the location of the food with the dance"
)

# fact pool: sentence -> first rank allowed to carry it (cut structure for sweeps)
WEB50_FACTS = [
    ("Honeybees communicate the location of food.", 1),
    ("Honeybees perform the waggle dance to communicate the location of food.", 1),
    ("Honeybees encode the distance of the food in the duration of the dance.", 2),
    ("Honeybees collect the nectar and carry the food to the location of the flowers.", 2),
    ("Honeybees follow the dance to the location of the flowers and the food.", 6),
    ("Honeybees share the location of the food inside the hive.", 6),
    ("Honeybees build the honeycomb to store the food and communicate the location.", 11),
    ("Honeybees mark the route to the food and communicate the location.", 11),
    ("Honeybees show the direction to the location of the food with the sun.", 20),
    ("Honeybees signal the angle to the location of the food with the dance.", 20),
]

WEB50_QUESTION = "How do honeybees communicate the location of food?"

WEB50_JUNK = [
    "The div class contains a header banner.",
    "The cookie notice covers the page footer.",
    "The newsletter offers weekly updates.",
    "The sidebar shows related advertising links.",
]

WEB50_FILLER = [
    "Navigation menu home search archive privacy terms.",
    "Related topics bee anatomy flower nectar pollen guide.",
    "Photo gallery hive frames smoker veil gloves.",
    "Comments section currently closed for this page.",
]


def write_jsonl(path: Path, records: list[dict]) -> None:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")


def make_einstein() -> None:
    write_jsonl(FIXTURES / "einstein_docs.jsonl", EINSTEIN_DOCS)
    write_jsonl(FIXTURES / "einstein_coref.jsonl", EINSTEIN_COREF)
    (FIXTURES / "einstein_query.txt").write_text(EINSTEIN_QUERY + "\n", encoding="utf-8")

    docs = qk.load_corpus(FIXTURES / "einstein_docs.jsonl")
    chains = qk.load_coref(FIXTURES / "einstein_coref.jsonl")
    docs = [qk.apply_coref(d, chains) for d in docs]
    triples = [t for d in docs for t in qk.heuristic_extract(d)]
    assert len(triples) == 4, f"expected 4 einstein triples, got {len(triples)}"

    q = qk.Query.from_text(EINSTEIN_QUERY)

    # defaults: both prize triples pass relevance and produce the two-predicate block
    g = qk.build(docs, triples, q)
    seq = qk.linearize(g)
    expected_block = "<sub> albert einstein <obj> the nobel prize <pred> won"
    assert seq.text().startswith(expected_block), seq.text()
    assert seq.text().startswith(expected_block + " <s> received"), seq.text()

    # with the relevance gate open, all four triples enter: einstein weight 4
    g_all = qk.build(docs, triples, q, tau_rel=0.0)
    heaviest = max(g_all.nodes.values(), key=lambda n: n.weight)
    assert heaviest.name == ("albert", "einstein") and heaviest.weight == 4, heaviest
    g_all.validate()
    print(f"einstein: 4 triples, heaviest node {heaviest.weight}, block reproduced")


def build_web50_docs(rng: random.Random) -> list[dict]:
    docs = []
    for rank in range(1, 51):
        available = [fact for fact, first in WEB50_FACTS if rank >= first]
        if rank == 1:
            facts = [WEB50_FACTS[0][0], WEB50_FACTS[1][0]]
        else:
            n = rng.randint(2, min(4, len(available)))
            facts = rng.sample(available, n)
        sentences = []
        if rank == 1 or rng.random() < 0.35:
            sentences.append(WEB50_QUESTION)
        sentences.extend(facts)
        sentences.append(rng.choice(WEB50_JUNK))
        if rng.random() < 0.7:
            sentences.append(rng.choice(WEB50_JUNK))
        sentences.append(rng.choice(WEB50_FILLER))
        if rng.random() < 0.5:
            sentences.append(rng.choice(WEB50_FILLER))
        rng.shuffle(sentences)
        docs.append({"doc_id": f"web-{rank:02d}", "rank": rank, "text": " ".join(sentences)})
    return docs


def make_web50() -> None:
    rng = random.Random(20240817)
    records = build_web50_docs(rng)
    write_jsonl(FIXTURES / "web50_docs.jsonl", records)
    (FIXTURES / "web50_query.txt").write_text(WEB50_QUERY + "\n", encoding="utf-8")
    (FIXTURES / "web50_target.txt").write_text(WEB50_TARGET + "\n", encoding="utf-8")

    docs = qk.load_corpus(FIXTURES / "web50_docs.jsonl")
    triples = [t for d in docs for t in qk.heuristic_extract(d)]
    q = qk.Query.from_text(WEB50_QUERY)
    model = fit_model(docs)

    # every pooled fact must clear the default relevance gate; junk must not
    scores = []
    for fact, _ in WEB50_FACTS:
        (t,) = qk.heuristic_extract(qk.Document.from_text("probe", 1, fact))
        scores.append((model.overlap(t.tokens(), q.tokens), fact))
    for score, fact in scores:
        print(f"  fact {score:.3f}  {fact}")
        assert score >= 0.32, f"fact below gate margin ({score:.3f}): {fact}"
    for junk in WEB50_JUNK:
        (t,) = qk.heuristic_extract(qk.Document.from_text("probe", 1, junk))
        score = model.overlap(t.tokens(), q.tokens)
        assert score < 0.28, f"junk above gate margin ({score:.3f}): {junk}"

    g = qk.build(docs, triples, q)
    seq = qk.linearize(g)
    ratio = compression(docs, seq)
    assert ratio >= 6.0, f"compression ratio too low: {ratio:.2f}"

    ratios = []
    for tau in (0.0, 0.30, 0.60):
        g_t = qk.build(docs, triples, q, tau_rel=tau, model=model)
        ratios.append(compression(docs, qk.linearize(g_t)))
    assert ratios[0] < ratios[1] < ratios[2], f"tau_rel sweep not increasing: {ratios}"

    target = qk.tokenize(WEB50_TARGET)
    sweep = hits_sweep(docs, triples, q, PipelineConfig(), [1, 5, 10, 50], target)
    fracs = [rep.missing_fraction for _, rep in sweep]
    assert all(a >= b for a, b in zip(fracs, fracs[1:])), f"sweep not monotone: {fracs}"
    assert fracs[0] > fracs[-1] + 0.10, f"cut-1 vs cut-50 margin too small: {fracs}"

    total = sum(d.token_count() for d in docs)
    print(
        f"web50: {total} corpus tokens, {len(seq)} linearized, ratio {ratio:.1f}, "
        f"tau ladder {[round(r, 1) for r in ratios]}, sweep missing {[round(f, 3) for f in fracs]}"
    )


Q20_TOPICS = [
    ("glass frog", "carries transparent skin", [("builds", "foam nests"), ("collects", "rain water"), ("signals", "sudden danger")]),
    ("mantis shrimp", "throws fast punches", [("sees", "polarized light"), ("breaks", "snail shells"), ("digs", "sand burrows")]),
    ("pitcher plant", "traps careless insects", [("holds", "rain pools"), ("produces", "sweet nectar"), ("feeds", "resident larvae")]),
    ("satin bowerbird", "builds decorated bowers", [("collects", "blue objects"), ("performs", "dance displays"), ("copies", "strange sounds")]),
    ("snow leopard", "hunts mountain slopes", [("wears", "thick fur"), ("jumps", "wide gorges"), ("marks", "stone ridges")]),
    ("fire coral", "burns careless divers", [("builds", "reef walls"), ("hosts", "tiny algae"), ("grows", "branching blades")]),
    ("moon jelly", "drifts ocean currents", [("glows", "faint blue"), ("eats", "drifting plankton"), ("survives", "warming seas")]),
    ("sand viper", "hides under dunes", [("leaves", "strange tracks"), ("strikes", "passing lizards"), ("wears", "scaled horns")]),
    ("cloud forest", "holds constant mist", [("shelters", "rare orchids"), ("feeds", "mountain streams"), ("hides", "quetzal nests")]),
    ("tide pool", "traps small seas", [("shelters", "young crabs"), ("grows", "pink algae"), ("reflects", "morning light")]),
    ("bog orchid", "blooms hidden marshes", [("draws", "rare moths"), ("keeps", "twisted roots"), ("survives", "acid water")]),
    ("cave salamander", "lives without light", [("keeps", "pale skin"), ("senses", "water pulses"), ("eats", "blind shrimp")]),
    ("desert fox", "survives burning heat", [("digs", "deep dens"), ("hears", "buried beetles"), ("wears", "huge ears")]),
    ("river otter", "plays swift rapids", [("builds", "bank tunnels"), ("catches", "silver trout"), ("teaches", "young pups")]),
    ("reef shark", "patrols coral edges", [("senses", "faint currents"), ("follows", "night tides"), ("keeps", "cleaning stations")]),
    ("dune grass", "anchors moving sand", [("spreads", "buried runners"), ("survives", "salt spray"), ("feeds", "nesting plovers")]),
    ("storm petrel", "walks wave crests", [("smells", "distant oil"), ("nests", "cliff burrows"), ("follows", "fishing boats")]),
    ("pine marten", "climbs winter spruce", [("caches", "autumn berries"), ("hunts", "red squirrels"), ("keeps", "hollow dens")]),
    ("marsh wren", "weaves reed globes", [("builds", "decoy nests"), ("sings", "rattling songs"), ("defends", "cattail patches")]),
    ("honey badger", "fears almost nothing", [("raids", "buried hives"), ("digs", "rapid tunnels"), ("survives", "snake venom")]),
]

# verbs above that are not in the bundled lexicon get swapped here
Q20_VERB_FIXES = {
    "sees": "watches",
    "throws": "throws",
    "glows": "shines",
    "eats": "eats",
    "hosts": "keeps",
    "senses": "notices",
    "hears": "hears",
    "smells": "notices",
    "nests": "keeps",
    "caches": "hides",
    "sings": "sings",
    "defends": "protects",
    "raids": "attacks",
    "strikes": "attacks",
    "leaves": "leaves",
    "copies": "repeats",
    "traps": "catches",
    "drifts": "follows",
    "blooms": "opens",
    "weaves": "builds",
    "plays": "plays",
    "patrols": "watches",
    "anchors": "holds",
    "walks": "walks",
    "climbs": "climbs",
    "fears": "fears",
    "burns": "burns",
    "hides": "hides",
    "lives": "lives",
    "survives": "survives",
    "hunts": "hunts",
    "holds": "holds",
    "wears": "wears",
    "jumps": "jumps",
    "marks": "marks",
    "digs": "digs",
    "breaks": "breaks",
    "carries": "carries",
    "builds": "builds",
    "collects": "collects",
    "signals": "signals",
    "produces": "produces",
    "feeds": "feeds",
    "performs": "performs",
    "keeps": "keeps",
    "grows": "grows",
    "draws": "draws",
    "shelters": "shelters",
    "reflects": "reflects",
    "spreads": "spreads",
    "follows": "follows",
    "catches": "catches",
    "teaches": "teaches",
}


def q20_normalize(verb: str, verb_forms: frozenset[str]) -> str:
    fixed = Q20_VERB_FIXES.get(verb, verb)
    assert fixed in verb_forms, f"verb {fixed!r} missing from bundled lexicon"
    return fixed


def make_questions20() -> None:
    from querykg import lexicon

    verb_forms = lexicon.verbs()
    rng = random.Random(99)
    records = []
    for idx, (entity, key_fact, raw_facts) in enumerate(Q20_TOPICS, start=1):
        kverb, krest = key_fact.split(" ", 1)
        kverb = q20_normalize(kverb, verb_forms)
        facts = [(q20_normalize(v, verb_forms), obj) for v, obj in raw_facts]

        repeated = f"Guides explain why the {entity} is special because it {kverb} {krest}."
        fact_sents = [f"The {entity} {v} {obj}." for v, obj in facts]
        fillers = [
            "Site map press kit careers newsletter archive.",
            "Image credits license info cookie settings.",
            "Trending stories weather traffic lottery results.",
        ]

        docs = []
        for d in range(1, 6):
            sentences = [repeated]
            if d == 1:
                sentences.extend(fact_sents)
            else:
                sentences.extend(rng.sample(fact_sents, 2))
                sentences.append(repeated)
            sentences.append(rng.choice(fillers))
            rng.shuffle(sentences)
            docs.append(
                {"doc_id": f"q{idx:02d}-d{d}", "rank": d, "text": " ".join(sentences)}
            )

        target = f"the {entity} {kverb} {krest}" + "".join(
            f" and {v} {obj}" for v, obj in facts
        )
        records.append(
            {
                "qid": f"q{idx:02d}",
                "query": f"why is the {entity} special",
                "target": target,
                "docs": docs,
            }
        )

    write_jsonl(FIXTURES / "questions20.jsonl", records)

    wins = 0
    for rec in records:
        docs = [qk.Document.from_text(d["doc_id"], d["rank"], d["text"]) for d in rec["docs"]]
        q = qk.Query.from_text(rec["query"])
        triples = [t for d in docs for t in qk.heuristic_extract(d)]
        model = fit_model(docs)
        g = qk.build(docs, triples, q, model=model)
        seq = qk.linearize(g)
        target = qk.tokenize(rec["target"])
        graph_cov = coverage(target, seq.tokens)
        base_cov = coverage(target, tfidf_extract(docs, q, model, budget=len(seq)))
        if graph_cov.missing_fraction <= base_cov.missing_fraction:
            wins += 1
    assert wins >= 17, f"graph beats baseline on only {wins}/20 questions"
    print(f"questions20: graph covers at least as much as the baseline on {wins}/20")


def main() -> None:
    FIXTURES.mkdir(parents=True, exist_ok=True)
    make_einstein()
    make_web50()
    make_questions20()
    print("fixtures written to", FIXTURES)


if __name__ == "__main__":
    main()
