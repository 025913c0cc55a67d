import json

import pytest

import querykg as qk
from querykg import fixtures
from querykg.kgraph import fit_model


@pytest.fixture(scope="session")
def einstein():
    """The bundled two-document biography corpus, coref applied."""
    docs = qk.load_corpus(fixtures.einstein_docs())
    chains = qk.load_coref(fixtures.einstein_coref())
    docs = [qk.apply_coref(d, chains) for d in docs]
    query = qk.Query.from_text(fixtures.einstein_query().read_text().strip())
    triples = [t for d in docs for t in qk.heuristic_extract(d)]
    return {"docs": docs, "triples": triples, "query": query, "model": fit_model(docs)}


@pytest.fixture(scope="session")
def web50():
    """The bundled 50-document corpus with query and target answer."""
    docs = qk.load_corpus(fixtures.web50_docs())
    query = qk.Query.from_text(fixtures.web50_query().read_text().strip())
    target = qk.tokenize(fixtures.web50_target().read_text().strip())
    triples = [t for d in docs for t in qk.heuristic_extract(d)]
    return {"docs": docs, "triples": triples, "query": query, "target": target,
            "model": fit_model(docs)}


@pytest.fixture(scope="session")
def questions20():
    records = [
        json.loads(line)
        for line in fixtures.questions20().read_text().splitlines()
        if line.strip()
    ]
    assert len(records) == 20
    return records
