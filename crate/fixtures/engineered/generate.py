"""Builds the engineered categorizer fixture traced in TRACE.md.

Vectors are combinations of orthonormal basis directions, so every cosine
in the trace is an exact product of the coefficients below.
"""

import json
import math
from pathlib import Path

OUT = Path(__file__).resolve().parent
DIM = 72

basis_used = 0


def fresh():
    global basis_used
    i = basis_used
    basis_used += 1
    assert i < DIM
    return i


def vec(*parts):
    v = [0.0] * DIM
    for coef, i in parts:
        v[i] += coef
    return v


def member(shared, a):
    """a·e_shared + sqrt(1 - a²)·e_fresh; pairwise cosine a², cosine a to e_shared."""
    return vec((a, shared), (math.sqrt(1 - a * a), fresh()))


pages = []
vectors = {}
terms = []


def page(word, hypernyms=()):
    pages.append({
        "headword": word,
        "senses": [{"areas": [], "definition": "ein begriff ohne weitere verweise"}],
        "hypernyms": list(hypernyms),
        "hyponyms": [],
    })


# name, compounds, member coefficient a, label coefficient toward the shared axis, hypernyms of the head
HEADS = [
    ("Pumpe", ["Kolbenpumpe", "Kreiselpumpe", "Zahnradpumpe", "Membranpumpe", "Schlauchpumpe", "Hubpumpe"],
     0.8, 1.0, ["Maschinenelement"]),
    ("Ventil", ["Kugelventil", "Nadelventil", "Sitzventil", "Schieberventil", "Drosselventil",
                "Wegeventil", "Sperrventil", "Regelventil"], 0.9, 1.0, ["Armatur"]),
    ("Kabel", ["Erdkabel", "Datenkabel", "Stromkabel", "Flachkabel", "Koaxkabel", "Glasfaserkabel"],
     math.sqrt(0.1), 1.0, ["Maschinenelement"]),
    ("Schalter", ["Kippschalter", "Drehschalter", "Druckschalter", "Tastschalter", "Endschalter",
                  "Wippschalter"], 0.8, 0.3, ["Maschinenelement"]),
    ("Lager", ["Kugellager", "Gleitlager", "Rollenlager", "Nadellager"], 0.8, 1.0, ["Maschinenelement"]),
    ("Filter", ["Luftfilter", "Feinfilter", "Grobfilter", "Siebfilter"], 0.8, 1.0, []),
]

axis = {}
for head, compounds, a, label_coef, hypernyms in HEADS:
    s = fresh()
    axis[head] = s
    if label_coef == 1.0:
        vectors[head] = vec((1.0, s))
    else:
        vectors[head] = vec((label_coef, s), (math.sqrt(1 - label_coef ** 2), fresh()))
    page(head, hypernyms)
    for c in compounds:
        vectors[c] = member(s, a)
        terms.append(c)

# Shared by the Pumpe and Filter candidates; its vector sits with the pumps.
page("Filterpumpe", ["Filter", "Pumpe"])
vectors["Filterpumpe"] = member(axis["Pumpe"], 0.8)
terms.append("Filterpumpe")

# Six seals with their own pages, each under both Dichtung and Bauteil.
d = fresh()
for c in ["Flachdichtung", "Ringdichtung", "Wellendichtung", "Lippendichtung", "Spaltdichtung", "Gummidichtung"]:
    page(c, ["Dichtung", "Bauteil"])
    vectors[c] = member(d, 0.8)
    terms.append(c)
page("Dichtung", ["Komponente"])
vectors["Dichtung"] = vec((1.0, d))
page("Bauteil")
vectors["Bauteil"] = vec((0.5, d), (math.sqrt(0.75), fresh()))
page("Komponente")
vectors["Komponente"] = vec((0.45, d), (math.sqrt(1 - 0.45 ** 2), fresh()))

page("Armatur", ["Geraet"])
vectors["Armatur"] = vec((0.5, axis["Ventil"]), (math.sqrt(0.75), fresh()))
page("Maschinenelement", ["Geraet"])
vectors["Maschinenelement"] = vec((1.0, fresh()))
page("Geraet")
vectors["Geraet"] = vec((1.0, fresh()))

# Isolated terms: pages without hypernyms; they only enlarge the term count.
FILLERS = ["Druck", "Temperatur", "Spannung", "Strom", "Leistung", "Frequenz", "Drehzahl", "Masse",
           "Dichte", "Kraft", "Energie", "Arbeit", "Moment", "Volumen", "Flaeche"]
for f in FILLERS:
    page(f)
    vectors[f] = vec((1.0, fresh()))
    terms.append(f)

with open(OUT / "kb.jsonl", "w", encoding="utf-8") as fh:
    for p in sorted(pages, key=lambda p: p["headword"]):
        fh.write(json.dumps(p, ensure_ascii=False) + "\n")

with open(OUT / "vectors.txt", "w", encoding="utf-8") as fh:
    fh.write(f"{len(vectors)} {DIM}\n")
    for w in sorted(vectors):
        fh.write(w + " " + " ".join(repr(x) for x in vectors[w]) + "\n")

with open(OUT / "terms.csv", "w", encoding="utf-8") as fh:
    fh.write("surface,frequency\n")
    for i, t in enumerate(sorted(terms)):
        fh.write(f"{t},{3 + i % 5}\n")

print(f"{len(pages)} pages, {len(vectors)} vectors, {len(terms)} terms, {basis_used} basis directions")
