"""Regenerate src/querykg/data/verbs.txt from a base-verb list.

Regular verbs get -s / -ed / -ing forms with standard spelling rules
(e-drop, y->ies/ied, final-consonant doubling); irregular verbs carry an
explicit form table. Output is sorted and deduplicated, one token per line.

Run from the repository root:  python tools/make_wordlists.py
"""

from __future__ import annotations

from pathlib import Path

VOWELS = set("aeiou")

BASE_VERBS = """
accept achieve add admit agree allow announce answer appear apply argue
arrive ask attack attempt avoid base beat believe belong borrow bring
build burn call carry cause change charge claim climb close collect
communicate compare complete confirm connect consider contain continue
control cost
cover create cross damage decide define deliver demand depend describe
design destroy determine develop die direct discover discuss divide drop
earn emit employ encode encourage enjoy enter establish estimate examine
exist expand expect experience explain express extend face fail fear feed
fill finish focus follow force form found gain handle happen head help
hunt shelter
hope identify ignore imagine improve include increase indicate influence
inform intend introduce invent investigate involve join jump kill lack
land last launch lead learn like limit link listen live look love manage
mark match matter measure mention miss move name need note notice observe
obtain occur offer open operate order own pass perform pick plan play
point prefer prepare present press prevent produce promise protect prove
provide publish pull push raise reach realize receive recognize record
reduce refer reflect refuse regard release remain remember remove repeat
replace report represent require rest result return reveal save seem
serve settle share show signal smile sort sound start state stay stop
study succeed suffer suggest supply support suppose surround survive talk
test thank touch train transfer translate travel treat try turn use
visit vote wait walk want warn wash watch wish wonder work
""".split()

# base -> full surface form set (base included)
IRREGULAR = {
    "be": ["be", "am", "is", "are", "was", "were", "been", "being"],
    "become": ["become", "becomes", "became", "becoming"],
    "begin": ["begin", "begins", "began", "begun", "beginning"],
    "break": ["break", "breaks", "broke", "broken", "breaking"],
    "buy": ["buy", "buys", "bought", "buying"],
    "catch": ["catch", "catches", "caught", "catching"],
    "choose": ["choose", "chooses", "chose", "chosen", "choosing"],
    "come": ["come", "comes", "came", "coming"],
    "cut": ["cut", "cuts", "cutting"],
    "deal": ["deal", "deals", "dealt", "dealing"],
    "dig": ["dig", "digs", "dug", "digging"],
    "do": ["do", "does", "did", "done", "doing"],
    "draw": ["draw", "draws", "drew", "drawn", "drawing"],
    "drive": ["drive", "drives", "drove", "driven", "driving"],
    "eat": ["eat", "eats", "ate", "eaten", "eating"],
    "fall": ["fall", "falls", "fell", "fallen", "falling"],
    "feel": ["feel", "feels", "felt", "feeling"],
    "fight": ["fight", "fights", "fought", "fighting"],
    "find": ["find", "finds", "found", "finding"],
    "fly": ["fly", "flies", "flew", "flown", "flying"],
    "forget": ["forget", "forgets", "forgot", "forgotten", "forgetting"],
    "get": ["get", "gets", "got", "gotten", "getting"],
    "give": ["give", "gives", "gave", "given", "giving"],
    "go": ["go", "goes", "went", "gone", "going"],
    "grow": ["grow", "grows", "grew", "grown", "growing"],
    "hear": ["hear", "hears", "heard", "hearing"],
    "hide": ["hide", "hides", "hid", "hidden", "hiding"],
    "hit": ["hit", "hits", "hitting"],
    "hold": ["hold", "holds", "held", "holding"],
    "keep": ["keep", "keeps", "kept", "keeping"],
    "know": ["know", "knows", "knew", "known", "knowing"],
    "lay": ["lay", "lays", "laid", "laying"],
    "leave": ["leave", "leaves", "left", "leaving"],
    "lend": ["lend", "lends", "lent", "lending"],
    "let": ["let", "lets", "letting"],
    "lose": ["lose", "loses", "lost", "losing"],
    "make": ["make", "makes", "made", "making"],
    "mean": ["mean", "means", "meant", "meaning"],
    "meet": ["meet", "meets", "met", "meeting"],
    "pay": ["pay", "pays", "paid", "paying"],
    "put": ["put", "puts", "putting"],
    "read": ["read", "reads", "reading"],
    "rise": ["rise", "rises", "rose", "risen", "rising"],
    "run": ["run", "runs", "ran", "running"],
    "say": ["say", "says", "said", "saying"],
    "see": ["see", "sees", "saw", "seen", "seeing"],
    "sell": ["sell", "sells", "sold", "selling"],
    "send": ["send", "sends", "sent", "sending"],
    "set": ["set", "sets", "setting"],
    "shine": ["shine", "shines", "shone", "shined", "shining"],
    "shut": ["shut", "shuts", "shutting"],
    "sing": ["sing", "sings", "sang", "sung", "singing"],
    "sit": ["sit", "sits", "sat", "sitting"],
    "sleep": ["sleep", "sleeps", "slept", "sleeping"],
    "speak": ["speak", "speaks", "spoke", "spoken", "speaking"],
    "spend": ["spend", "spends", "spent", "spending"],
    "spread": ["spread", "spreads", "spreading"],
    "stand": ["stand", "stands", "stood", "standing"],
    "take": ["take", "takes", "took", "taken", "taking"],
    "teach": ["teach", "teaches", "taught", "teaching"],
    "tell": ["tell", "tells", "told", "telling"],
    "think": ["think", "thinks", "thought", "thinking"],
    "throw": ["throw", "throws", "threw", "thrown", "throwing"],
    "understand": ["understand", "understands", "understood", "understanding"],
    "wear": ["wear", "wears", "wore", "worn", "wearing"],
    "win": ["win", "wins", "won", "winning"],
    "write": ["write", "writes", "wrote", "written", "writing"],
}


def third_person(base: str) -> str:
    if base.endswith(("s", "x", "z", "ch", "sh", "o")):
        return base + "es"
    if base.endswith("y") and base[-2] not in VOWELS:
        return base[:-1] + "ies"
    return base + "s"


def doubles_final(base: str) -> bool:
    # one-syllable-ish CVC heuristic: short stem ending consonant-vowel-consonant
    if len(base) < 3:
        return False
    a, b, c = base[-3], base[-2], base[-1]
    if c in VOWELS or c in "wxy":
        return False
    return b in VOWELS and a not in VOWELS and len(base) <= 4


def past(base: str) -> str:
    if base.endswith("e"):
        return base + "d"
    if base.endswith("y") and base[-2] not in VOWELS:
        return base[:-1] + "ied"
    if doubles_final(base):
        return base + base[-1] + "ed"
    return base + "ed"


def gerund(base: str) -> str:
    if base.endswith("ie"):
        return base[:-2] + "ying"
    if base.endswith("e") and base != "be" and not base.endswith("ee"):
        return base[:-1] + "ing"
    if doubles_final(base):
        return base + base[-1] + "ing"
    return base + "ing"


def main() -> None:
    forms: set[str] = set()
    for base in BASE_VERBS:
        forms.update((base, third_person(base), past(base), gerund(base)))
    for table in IRREGULAR.values():
        forms.update(table)

    out = Path(__file__).resolve().parent.parent / "src" / "querykg" / "data" / "verbs.txt"
    header = (
        "# Verb surface forms for predicate detection: ~200 common verbs\n"
        "# with -s/-ed/-ing and irregular inflections, one per line.\n"
        "# Generated by tools/make_wordlists.py; edit that script, not this file.\n"
    )
    out.write_text(header + "\n".join(sorted(forms)) + "\n", encoding="utf-8")
    print(f"wrote {len(forms)} verb forms to {out}")


if __name__ == "__main__":
    main()
