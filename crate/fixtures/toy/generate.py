#!/usr/bin/env python3
"""Generates the toy fixture: a small German engineering corpus, a KB dump
and 50-dimensional word vectors.

Deterministic: running it twice produces byte-identical files. It also writes
`expected_terms.csv`, the term frequencies implied by the generated corpus,
which the test-suite compares against the extractor.

    python3 fixtures/toy/generate.py
"""

import json
import math
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent
SEED = 20240501
DIM = 50
DOCS = 50

# parent label: (areas, hypernyms, definition)
SUPERS = {
    "Maschine": (["Maschinenbau"], ["Gerät"], "technisches Gerät mit eigenem Antrieb"),
    "Maschinenelement": (["Maschinenbau"], ["Bauteil"], "genormtes Teil einer Konstruktion"),
    "Verbindungselement": (["Maschinenbau"], ["Bauteil"], "Teil, das andere Teile lösbar verbindet"),
    # Lists a hypernym that points back down, closing a cycle.
    "Bauteil": (["Technik"], ["Gegenstand", "Maschinenelement"], "einzelnes Teil einer technischen Einheit"),
    "Messgerät": (["Messtechnik"], ["Gerät"], "Gerät zum Erfassen von Messwerten"),
    "Bauelement": (["Elektrotechnik"], ["Bauteil"], "elektrisches Bauteil einer Schaltung"),
    "Werkstoff": (["Werkstoffkunde"], ["Material"], "Material für die Fertigung"),
    "Betriebsstoff": (["Technik"], ["Material"], "Stoff, der für den laufenden Betrieb nötig ist"),
    "Werkzeug": (["Handwerk"], ["Gerät"], "Gegenstand zur Bearbeitung von Werkstücken"),
    "Hydraulikkomponente": (["Maschinenbau"], ["Bauteil"], "Bauteil eines hydraulischen Systems"),
    "Größe": (["Physik"], [], "messbare Eigenschaft eines physikalischen Systems"),
    "Gerät": (["Technik"], ["Gegenstand"], "technischer Gegenstand"),
    "Gegenstand": ([], [], "körperliches Ding"),
    "Material": ([], [], "Stoff, aus dem etwas besteht"),
}

# head: (parent, areas, compounds)
HEADS = {
    "Motor": ("Maschine", ["Maschinenbau"], ["Dieselmotor", "Elektromotor", "Benzinmotor", "Verbrennungsmotor", "Schrittmotor", "Drehstrommotor", "Ottomotor", "Sechszylindermotor", "Außenbordmotor", "Servomotor"]),
    "Pumpe": ("Maschine", ["Maschinenbau"], ["Wasserpumpe", "Ölpumpe", "Kraftstoffpumpe", "Kreiselpumpe", "Kolbenpumpe", "Vakuumpumpe", "Zahnradpumpe", "Membranpumpe", "Tauchpumpe"]),
    "Turbine": ("Maschine", ["Maschinenbau"], ["Dampfturbine", "Gasturbine", "Windturbine", "Wasserturbine", "Kaplanturbine"]),
    "Verdichter": ("Maschine", ["Maschinenbau"], ["Schraubenverdichter", "Kolbenverdichter", "Turboverdichter", "Radialverdichter", "Axialverdichter"]),
    "Lüfter": ("Maschine", ["Maschinenbau"], ["Gehäuselüfter", "Radiallüfter", "Axiallüfter", "Kühlerlüfter"]),
    "Lager": ("Maschinenelement", ["Maschinenbau"], ["Kugellager", "Wälzlager", "Gleitlager", "Rollenlager", "Nadellager", "Axiallager", "Loslager", "Festlager"]),
    "Welle": ("Maschinenelement", ["Maschinenbau"], ["Antriebswelle", "Nockenwelle", "Kurbelwelle", "Gelenkwelle", "Hohlwelle", "Abtriebswelle"]),
    "Getriebe": ("Maschinenelement", ["Maschinenbau"], ["Zahnradgetriebe", "Planetengetriebe", "Schneckengetriebe", "Stirnradgetriebe", "Schaltgetriebe", "Automatikgetriebe", "Verteilergetriebe"]),
    "Kupplung": ("Maschinenelement", ["Maschinenbau"], ["Lamellenkupplung", "Klauenkupplung", "Rutschkupplung", "Fliehkraftkupplung", "Magnetkupplung"]),
    "Feder": ("Maschinenelement", ["Maschinenbau"], ["Druckfeder", "Zugfeder", "Blattfeder", "Schraubenfeder", "Tellerfeder", "Torsionsfeder", "Spiralfeder"]),
    "Zylinder": ("Maschinenelement", ["Maschinenbau"], ["Arbeitszylinder", "Pneumatikzylinder", "Bremszylinder", "Stellzylinder"]),
    "Schraube": ("Verbindungselement", ["Maschinenbau"], ["Sechskantschraube", "Senkkopfschraube", "Holzschraube", "Zylinderschraube", "Blechschraube", "Stellschraube", "Flügelschraube", "Passschraube", "Innensechskantschraube"]),
    "Mutter": ("Verbindungselement", ["Maschinenbau"], ["Sechskantmutter", "Hutmutter", "Flügelmutter", "Überwurfmutter", "Kontermutter", "Schweißmutter", "Nutmutter"]),
    "Bolzen": ("Verbindungselement", ["Maschinenbau"], ["Gewindebolzen", "Passbolzen", "Kolbenbolzen", "Sicherungsbolzen", "Scherbolzen"]),
    "Niete": ("Verbindungselement", ["Maschinenbau"], ["Blindniete", "Vollniete", "Hohlniete", "Spreizniete"]),
    "Stift": ("Verbindungselement", ["Maschinenbau"], ["Zylinderstift", "Kegelstift", "Spannstift", "Kerbstift"]),
    "Ventil": ("Bauteil", ["Technik"], ["Rückschlagventil", "Sicherheitsventil", "Magnetventil", "Überdruckventil", "Drosselventil", "Wegeventil", "Auslassventil", "Einlassventil"]),
    "Filter": ("Bauteil", ["Technik"], ["Ölfilter", "Luftfilter", "Kraftstofffilter", "Partikelfilter", "Feinfilter", "Aktivkohlefilter"]),
    "Dichtung": ("Bauteil", ["Technik"], ["Flachdichtung", "Wellendichtung", "Zylinderkopfdichtung", "Gummidichtung", "Labyrinthdichtung", "Gleitringdichtung"]),
    "Leitung": ("Bauteil", ["Technik"], ["Druckleitung", "Rohrleitung", "Kraftstoffleitung", "Wasserleitung", "Abgasleitung"]),
    "Schlauch": ("Bauteil", ["Technik"], ["Kühlerschlauch", "Druckschlauch", "Gummischlauch", "Saugschlauch", "Gewebeschlauch"]),
    "Behälter": ("Bauteil", ["Technik"], ["Druckbehälter", "Ausgleichsbehälter", "Vorratsbehälter", "Sammelbehälter", "Kraftstoffbehälter"]),
    "Sensor": ("Messgerät", ["Messtechnik"], ["Temperatursensor", "Drucksensor", "Drehzahlsensor", "Füllstandsensor", "Lichtsensor", "Abstandssensor", "Feuchtesensor", "Beschleunigungssensor"]),
    "Zähler": ("Messgerät", ["Messtechnik"], ["Stromzähler", "Wasserzähler", "Gaszähler", "Betriebsstundenzähler", "Impulszähler"]),
    "Manometer": ("Messgerät", ["Messtechnik"], ["Feinmanometer", "Kontaktmanometer", "Differenzdruckmanometer", "Federmanometer"]),
    "Thermometer": ("Messgerät", ["Messtechnik"], ["Bimetallthermometer", "Widerstandsthermometer", "Flüssigkeitsthermometer", "Infrarotthermometer"]),
    "Schalter": ("Bauelement", ["Elektrotechnik"], ["Hauptschalter", "Endschalter", "Druckschalter", "Kippschalter", "Drehschalter", "Notausschalter", "Schwimmerschalter"]),
    "Relais": ("Bauelement", ["Elektrotechnik"], ["Zeitrelais", "Schaltrelais", "Steuerrelais", "Überlastrelais", "Halbleiterrelais"]),
    "Widerstand": ("Bauelement", ["Elektrotechnik"], ["Vorwiderstand", "Heizwiderstand", "Messwiderstand", "Lastwiderstand", "Schichtwiderstand"]),
    "Kondensator": ("Bauelement", ["Elektrotechnik"], ["Elektrolytkondensator", "Keramikkondensator", "Folienkondensator", "Drehkondensator"]),
    "Kabel": ("Bauelement", ["Elektrotechnik"], ["Netzkabel", "Datenkabel", "Erdungskabel", "Verlängerungskabel", "Steuerkabel", "Massekabel"]),
    "Sicherung": ("Bauelement", ["Elektrotechnik"], ["Schmelzsicherung", "Feinsicherung", "Hauptsicherung", "Glassicherung"]),
    "Stecker": ("Bauelement", ["Elektrotechnik"], ["Netzstecker", "Rundstecker", "Flachstecker", "Schukostecker"]),
    "Stahl": ("Werkstoff", ["Werkstoffkunde"], ["Edelstahl", "Baustahl", "Werkzeugstahl", "Federstahl", "Schnellarbeitsstahl", "Vergütungsstahl", "Automatenstahl"]),
    "Kunststoff": ("Werkstoff", ["Werkstoffkunde"], ["Hartkunststoff", "Faserkunststoff", "Hochleistungskunststoff"]),
    "Glas": ("Werkstoff", ["Werkstoffkunde"], ["Sicherheitsglas", "Acrylglas", "Quarzglas", "Verbundglas", "Borosilikatglas"]),
    "Gummi": ("Werkstoff", ["Werkstoffkunde"], ["Naturgummi", "Silikongummi", "Moosgummi", "Hartgummi"]),
    "Fett": ("Betriebsstoff", ["Technik"], ["Schmierfett", "Lagerfett", "Mehrzweckfett", "Kupferfett", "Silikonfett"]),
    "Flüssigkeit": ("Betriebsstoff", ["Technik"], ["Kühlflüssigkeit", "Bremsflüssigkeit", "Hydraulikflüssigkeit", "Reinigungsflüssigkeit", "Scheibenwaschflüssigkeit"]),
    "Mittel": ("Betriebsstoff", ["Technik"], ["Kühlmittel", "Schmiermittel", "Reinigungsmittel", "Frostschutzmittel", "Korrosionsschutzmittel", "Lösungsmittel"]),
    "Wasser": ("Betriebsstoff", ["Technik"], ["Kühlwasser", "Abwasser", "Brauchwasser", "Speisewasser", "Kondenswasser"]),
    "Schlüssel": ("Werkzeug", ["Handwerk"], ["Schraubenschlüssel", "Maulschlüssel", "Ringschlüssel", "Drehmomentschlüssel", "Steckschlüssel", "Inbusschlüssel"]),
    "Zange": ("Werkzeug", ["Handwerk"], ["Rohrzange", "Kombizange", "Flachzange", "Crimpzange", "Spitzzange"]),
    "Hammer": ("Werkzeug", ["Handwerk"], ["Vorschlaghammer", "Gummihammer", "Schlosserhammer", "Kunststoffhammer"]),
    "Bohrer": ("Werkzeug", ["Handwerk"], ["Spiralbohrer", "Steinbohrer", "Holzbohrer", "Metallbohrer", "Forstnerbohrer"]),
    "Säge": ("Werkzeug", ["Handwerk"], ["Kreissäge", "Bandsäge", "Stichsäge", "Metallsäge"]),
}

# Compounds with their own page: hypernyms are the head and the hydraulics
# label, so these terms compete between two categories.
HYDRAULIC = {
    "Hydraulikpumpe": "Pumpe",
    "Hydraulikmotor": "Motor",
    "Hydraulikventil": "Ventil",
    "Hydraulikzylinder": "Zylinder",
    "Hydraulikschlauch": "Schlauch",
    "Hydraulikfilter": "Filter",
    "Hydraulikleitung": "Leitung",
}

QUANTITIES = ["Temperatur", "Druck", "Drehzahl", "Spannung", "Leistung", "Frequenz", "Strom", "Energie", "Drehmoment"]

# Ambiguous heads: a second sense from an unrelated area, with a hypernym
# whose page belongs only to that area.
FOREIGN = {
    "Mutter": ("Verwandtschaft", "Elternteil", "weiblicher Elternteil eines Kindes"),
    "Feder": ("Zoologie", "Körperbedeckung", "Hornbildung der Haut von Vögeln"),
    "Lager": ("Militär", "Unterkunft", "Ort zur Unterbringung von Truppen"),
    "Leitung": ("Wirtschaft", "Führung", "die leitenden Personen eines Betriebes"),
    "Zähler": ("Mathematik", "Zahl", "obere Zahl eines Bruches"),
    "Stift": ("Büro", "Schreibgerät", "Utensil zum Schreiben und Zeichnen"),
    "Hammer": ("Anatomie", "Gehörknöchelchen", "eines der drei Knöchelchen im Mittelohr"),
    "Schlüssel": ("Kryptografie", "Geheimnis", "Zeichenfolge zum Entschlüsseln einer Nachricht"),
}

# Pages that no domain term reaches; they make the dump realistic in size.
FILLER = {
    "Zoologie": ["Hund", "Katze", "Pferd", "Kuh", "Schaf", "Ziege", "Fuchs", "Wolf", "Adler", "Taube", "Forelle", "Karpfen", "Biene", "Ameise", "Spinne", "Frosch", "Eidechse", "Dachs", "Hirsch", "Hase"],
    "Botanik": ["Eiche", "Buche", "Tanne", "Fichte", "Linde", "Rose", "Tulpe", "Nelke", "Lilie", "Farn", "Moos", "Efeu", "Distel", "Klee", "Birke"],
    "Musik": ["Geige", "Klavier", "Flöte", "Trompete", "Posaune", "Harfe", "Gitarre", "Trommel", "Oboe", "Orgel", "Sinfonie", "Sonate", "Melodie", "Akkord", "Tonleiter"],
    "Kochkunst": ["Suppe", "Braten", "Kuchen", "Brot", "Nudel", "Salat", "Soße", "Auflauf", "Eintopf", "Knödel", "Strudel", "Brezel", "Torte", "Keks", "Pudding"],
    "Geografie": ["Berg", "Fluss", "Insel", "Küste", "Tal", "Wüste", "Hügel", "Ebene", "Bucht", "Halbinsel", "Gletscher", "Vulkan", "Meer", "Quelle", "Mündung"],
    "Medizin": ["Fieber", "Husten", "Schnupfen", "Verband", "Salbe", "Tablette", "Spritze", "Narbe", "Allergie", "Impfung", "Entzündung", "Prellung"],
    "Sport": ["Fußball", "Tennis", "Staffel", "Torwart", "Schiedsrichter", "Anpfiff", "Abseits", "Elfmeter", "Tribüne", "Pokal", "Medaille", "Rekord"],
    "Recht": ["Gesetz", "Urteil", "Klage", "Vertrag", "Anwalt", "Richter", "Berufung", "Vollmacht", "Vorschrift", "Haftung", "Bußgeld"],
    "Architektur": ["Fassade", "Giebel", "Erker", "Gewölbe", "Säule", "Kuppel", "Portal", "Treppenhaus", "Dachstuhl", "Fundament"],
    "Textil": ["Seide", "Wolle", "Leinen", "Samt", "Satin", "Filz", "Tweed", "Batist", "Musselin", "Kaschmir", "Flanell", "Jersey"],
    "Landwirtschaft": ["Acker", "Weizen", "Roggen", "Gerste", "Hafer", "Scheune", "Pflug", "Egge", "Heuballen", "Stall", "Weide", "Ernte"],
    "Religion": ["Kirche", "Kapelle", "Altar", "Gebet", "Predigt", "Pilger", "Kloster", "Mönch", "Nonne", "Segen", "Taufe", "Psalm"],
    "Kunst": ["Gemälde", "Skulptur", "Aquarell", "Leinwand", "Pinsel", "Staffelei", "Fresko", "Mosaik", "Radierung", "Collage", "Galerie", "Vernissage"],
    "Verkehr": ["Ampel", "Kreuzung", "Autobahn", "Bahnhof", "Gleis", "Haltestelle", "Fahrplan", "Umleitung", "Kreisverkehr", "Zebrastreifen", "Parkplatz", "Tunnel"],
    "Meteorologie": ["Regen", "Schnee", "Hagel", "Gewitter", "Wolke", "Sturm", "Orkan", "Nieselregen", "Tau", "Reif", "Frost", "Dunst"],
    "Astronomie": ["Planet", "Komet", "Galaxie", "Nebel", "Mond", "Sonne", "Asteroid", "Meteor", "Umlaufbahn", "Sternbild"],
}

# Capitalized words in running text without a page: excluded from annotation.
NOISE = ["Hinweis", "Abbildung", "Stunden", "Betrieb", "Wartung", "Kapitel", "Tabelle", "Hersteller", "Kunde", "Mitarbeiter", "Achtung", "Prüfung", "Montage"]

# Tokens with digits: dropped by the extractor.
DIGIT_TOKENS = ["M8", "DN50", "B2B", "DIN912", "IP67"]

AREA_TITLES_TECH = ["Maschinenbau", "Technik", "Elektrotechnik", "Messtechnik", "Werkstoffkunde", "Handwerk", "Physik"]

LINKING = ["nen", "es", "en", "er", "s", "n", "e"]

TEMPLATES2 = [
    "Der {0} wird zusammen mit {1} geprüft.",
    "Die {0} ist mit {1} verbunden.",
    "Dann wird {0} gegen {1} getauscht.",
    "Auch {0} und {1} werden regelmäßig kontrolliert.",
    "Dabei muss {0} vor {1} montiert werden.",
    "Jeder {0} benötigt {1}.",
    "Das {0} liegt neben {1}.",
    "Nach {0} folgt {1}.",
]
TEMPLATE1 = "Der {0} fehlt."


def capitalize(w):
    return w[:1].upper() + w[1:]


class Kb:
    def __init__(self):
        self.entries = {}

    def add(self, headword, senses, hypernyms=(), hyponyms=()):
        if headword in self.entries:
            e = self.entries[headword]
            e["senses"].extend(senses)
            e["hypernyms"] += [h for h in hypernyms if h not in e["hypernyms"]]
            e["hyponyms"] += [h for h in hyponyms if h not in e["hyponyms"]]
        else:
            self.entries[headword] = {
                "headword": headword,
                "senses": list(senses),
                "hypernyms": list(hypernyms),
                "hyponyms": list(hyponyms),
            }

    def lookup(self, w):
        if w in self.entries:
            return w
        c = capitalize(w)
        return c if c in self.entries else None


def split_head(term, kb):
    """Independent re-statement of the splitter, used to check the fixture."""
    hit = kb.lookup(term)
    if hit:
        return hit
    for start in range(1, len(term)):
        suffix = term[start:]
        if len(suffix) < 3:
            return None
        if kb.lookup(suffix):
            return split_head(suffix, kb)
        for link in LINKING:
            if suffix.lower().startswith(link):
                rest = suffix[len(link):]
                if len(rest) >= 3 and kb.lookup(rest):
                    return split_head(rest, kb)
    return None


def unit(v):
    n = math.sqrt(sum(x * x for x in v))
    return [x / n for x in v]


def add(*vs, weights=None):
    weights = weights or [1.0] * len(vs)
    return [sum(w * v[i] for w, v in zip(weights, vs)) for i in range(DIM)]


def main():
    rng = random.Random(SEED)

    def rand_unit():
        return unit([rng.gauss(0, 1) for _ in range(DIM)])

    # ---- knowledge base ------------------------------------------------
    kb = Kb()
    for label, (areas, hypers, definition) in SUPERS.items():
        kb.add(label, [{"areas": areas, "definition": definition}], hypers)
    for head, (parent, areas, compounds) in HEADS.items():
        definition = f"{parent} im technischen Bereich"
        listed = compounds[:3]
        kb.add(head, [{"areas": areas, "definition": definition}], [parent], listed)
    for term, head in HYDRAULIC.items():
        kb.add(term, [{"areas": ["Maschinenbau"], "definition": f"{head} eines hydraulischen Systems"}],
               [head, "Hydraulikkomponente"])
    for q in QUANTITIES:
        kb.add(q, [{"areas": ["Physik"], "definition": "physikalische Größe"}], ["Größe"])
    for head, (area, hyper, definition) in FOREIGN.items():
        kb.add(head, [{"areas": [area], "definition": definition}], [hyper])
        kb.add(hyper, [{"areas": [area], "definition": "allgemeiner Begriff"}])
    for area, words in FILLER.items():
        for w in words:
            kb.add(w, [{"areas": [area], "definition": "allgemeiner Begriff"}])

    # Every compound must resolve to its intended head.
    for head, (_, _, compounds) in HEADS.items():
        for c in compounds:
            got = split_head(c, kb)
            assert got == head, f"{c}: expected head {head}, got {got}"
    for n in NOISE:
        assert split_head(n, kb) is None, f"noise term {n} resolves to {split_head(n, kb)}"

    # ---- vectors ---------------------------------------------------------
    vectors = {}
    super_dir = {s: rand_unit() for s in SUPERS}
    tech = rand_unit()
    hydraulic = rand_unit()
    for s in SUPERS:
        vectors[s] = super_dir[s]
    for head, (parent, _, compounds) in HEADS.items():
        h = unit(add(super_dir[parent], rand_unit(), weights=[1.0, 0.9]))
        vectors[head] = h
        for i, c in enumerate(compounds):
            # Every seventh compound is left to the OOV fallback.
            if (len(vectors) + i) % 7 == 0:
                continue
            vectors[c] = unit(add(h, rand_unit(), weights=[1.0, 0.8]))
    for term, head in HYDRAULIC.items():
        vectors[term] = unit(add(vectors[head], hydraulic, rand_unit(), weights=[1.0, 0.9, 0.5]))
    vectors["Hydraulikkomponente"] = unit(add(hydraulic, super_dir["Bauteil"], weights=[1.0, 0.5]))
    vectors["Hydraulik"] = hydraulic
    for q in QUANTITIES:
        vectors[q] = unit(add(super_dir["Größe"], rand_unit(), weights=[1.0, 1.0]))
    for area in AREA_TITLES_TECH:
        vectors[area] = unit(add(tech, rand_unit(), weights=[1.0, 0.6]))
    for head, (area, hyper, _) in FOREIGN.items():
        vectors[area] = rand_unit()
        vectors[hyper] = rand_unit()
    for area, words in FILLER.items():
        vectors[area] = rand_unit()
        for w in words[::2]:
            vectors[w] = rand_unit()

    # ---- corpus ----------------------------------------------------------
    freq = {}
    for head, (_, _, compounds) in HEADS.items():
        freq[head] = rng.randint(6, 18)
        for c in compounds:
            freq[c] = rng.randint(1, 6)
    for term in HYDRAULIC:
        freq[term] = rng.randint(2, 8)
    for q in QUANTITIES:
        freq[q] = rng.randint(3, 12)
    for n in NOISE:
        freq[n] = rng.randint(1, 9)
    for w in rng.sample([w for ws in FILLER.values() for w in ws], 6):
        freq[w] = rng.randint(1, 2)

    occurrences = [t for t, n in sorted(freq.items()) for _ in range(n)]
    rng.shuffle(occurrences)
    sentences = []
    while len(occurrences) >= 2:
        a, b = occurrences.pop(), occurrences.pop()
        sentences.append(rng.choice(TEMPLATES2).format(a, b))
    for a in occurrences:
        sentences.append(TEMPLATE1.format(a))
    for tok in DIGIT_TOKENS:
        sentences.append(f"Die Befestigung erfolgt mit {tok}.")
        freq["Befestigung"] = freq.get("Befestigung", 0) + 1
    rng.shuffle(sentences)

    corpus_dir = OUT / "corpus"
    corpus_dir.mkdir(exist_ok=True)
    for old in corpus_dir.glob("*.txt"):
        old.unlink()
    per_doc = math.ceil(len(sentences) / DOCS)
    for d in range(DOCS):
        chunk = sentences[d * per_doc:(d + 1) * per_doc]
        lines = [" ".join(chunk[i:i + 4]) for i in range(0, len(chunk), 4)]
        (corpus_dir / f"doc{d + 1:02}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")

    # ---- outputs ---------------------------------------------------------
    with open(OUT / "kb.jsonl", "w", encoding="utf-8") as f:
        for e in kb.entries.values():
            f.write(json.dumps(e, ensure_ascii=False) + "\n")
    with open(OUT / "vectors.txt", "w", encoding="utf-8") as f:
        f.write(f"{len(vectors)} {DIM}\n")
        for w in sorted(vectors):
            f.write(w + " " + " ".join(f"{x:.6f}" for x in vectors[w]) + "\n")
    with open(OUT / "expected_terms.csv", "w", encoding="utf-8") as f:
        f.write("surface,frequency\n")
        for t in sorted(freq):
            f.write(f"{t},{freq[t]}\n")
    print(f"{len(kb.entries)} KB entries, {len(vectors)} vectors, {len(freq)} terms, {len(sentences)} sentences")


if __name__ == "__main__":
    main()
