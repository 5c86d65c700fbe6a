#!/usr/bin/env python3
"""Regenerates data/verbs.tsv from the base-verb and irregular-form lists below.

Copular and auxiliary verbs (be, have, do, modals) are deliberately absent:
they are not action events.
"""
import sys

REGULAR = """
accept accuse add admire admit agree allow answer appear arrest arrive ask attack
bake bark bathe battle beg behave believe belong bless boil borrow bounce bow
brush bury call calm carry catch_ cause chase cheat check cheer chew chop clap
clean climb close collect comb complain cook copy count cover crash crawl cross
cry dance dare deliver depend deserve destroy die disappear discover dress drown
dry earn enjoy enter escape examine explain fail fasten fear fetch fill finish
fix float flow fold follow force frighten gather gaze glance glow grab greet guard
guess hammer hand handle happen hate heal help hop hope hug hunt hurry ignore
imagine invite jump kick kill kiss knock laugh lick lift like listen live lock
look love marry melt mend miss move murder nod notice obey offer open order pack
paint pass pause perform pick place plant play please plead point poison pour pray
prepare press pretend promise protect pull punish push question race rain reach
realize receive refuse rejoice relax release remain remember reply report rescue
rest return reward roar rob roll rub rush sail save scold scream search serve settle
shave shout sigh sip skip slap slip smash smell smile sneak sniff snore sob spill
spoil spy squeeze stare start starve stay step stop stroll struggle stumble suffer
surprise suspect swallow tap taste tease thank touch trap travel trick trip trust
try tumble turn vanish visit wait walk wander want warn wash watch wave weep_
whisper whistle wish wonder work worry wrap yell
"""

# base: past, participle
IRREGULAR = {
    "arise": ("arose", "arisen"), "awake": ("awoke", "awoken"), "bear": ("bore", "born"),
    "beat": ("beat", "beaten"), "become": ("became", "become"), "begin": ("began", "begun"),
    "bend": ("bent", "bent"), "bind": ("bound", "bound"), "bite": ("bit", "bitten"),
    "bleed": ("bled", "bled"), "blow": ("blew", "blown"), "break": ("broke", "broken"),
    "bring": ("brought", "brought"), "build": ("built", "built"), "burn": ("burnt", "burnt"),
    "buy": ("bought", "bought"), "catch": ("caught", "caught"), "choose": ("chose", "chosen"),
    "cling": ("clung", "clung"), "come": ("came", "come"), "creep": ("crept", "crept"),
    "cut": ("cut", "cut"), "deal": ("dealt", "dealt"), "dig": ("dug", "dug"),
    "draw": ("drew", "drawn"), "dream": ("dreamt", "dreamt"), "drink": ("drank", "drunk"),
    "drive": ("drove", "driven"), "eat": ("ate", "eaten"), "fall": ("fell", "fallen"),
    "feed": ("fed", "fed"), "feel": ("felt", "felt"), "fight": ("fought", "fought"),
    "find": ("found", "found"), "flee": ("fled", "fled"), "fling": ("flung", "flung"),
    "fly": ("flew", "flown"), "forget": ("forgot", "forgotten"),
    "forgive": ("forgave", "forgiven"), "freeze": ("froze", "frozen"), "get": ("got", "gotten"),
    "give": ("gave", "given"), "go": ("went", "gone"), "grind": ("ground", "ground"),
    "grow": ("grew", "grown"), "hang": ("hung", "hung"), "hear": ("heard", "heard"),
    "hide": ("hid", "hidden"), "hit": ("hit", "hit"), "hold": ("held", "held"),
    "hurt": ("hurt", "hurt"), "keep": ("kept", "kept"), "kneel": ("knelt", "knelt"),
    "know": ("knew", "known"), "lay": ("laid", "laid"), "lead": ("led", "led"),
    "leap": ("leapt", "leapt"), "learn": ("learnt", "learnt"), "leave": ("left", "left"),
    "lend": ("lent", "lent"), "let": ("let", "let"), "lie": ("lay", "lain"),
    "light": ("lit", "lit"), "lose": ("lost", "lost"), "make": ("made", "made"),
    "mean": ("meant", "meant"), "meet": ("met", "met"), "pay": ("paid", "paid"),
    "put": ("put", "put"), "quit": ("quit", "quit"), "read": ("read", "read"),
    "ride": ("rode", "ridden"), "ring": ("rang", "rung"), "rise": ("rose", "risen"),
    "run": ("ran", "run"), "say": ("said", "said"), "see": ("saw", "seen"),
    "seek": ("sought", "sought"), "sell": ("sold", "sold"), "send": ("sent", "sent"),
    "set": ("set", "set"), "sew": ("sewed", "sewn"), "shake": ("shook", "shaken"),
    "shine": ("shone", "shone"), "shoot": ("shot", "shot"), "show": ("showed", "shown"),
    "shut": ("shut", "shut"), "sing": ("sang", "sung"), "sink": ("sank", "sunk"),
    "sit": ("sat", "sat"), "slay": ("slew", "slain"), "sleep": ("slept", "slept"),
    "slide": ("slid", "slid"), "speak": ("spoke", "spoken"), "spend": ("spent", "spent"),
    "spin": ("spun", "spun"), "spit": ("spat", "spat"), "split": ("split", "split"),
    "spread": ("spread", "spread"), "spring": ("sprang", "sprung"), "stand": ("stood", "stood"),
    "steal": ("stole", "stolen"), "stick": ("stuck", "stuck"), "sting": ("stung", "stung"),
    "strike": ("struck", "struck"), "swear": ("swore", "sworn"), "sweep": ("swept", "swept"),
    "swim": ("swam", "swum"), "swing": ("swung", "swung"), "take": ("took", "taken"),
    "teach": ("taught", "taught"), "tear": ("tore", "torn"), "tell": ("told", "told"),
    "think": ("thought", "thought"), "throw": ("threw", "thrown"), "tread": ("trod", "trodden"),
    "understand": ("understood", "understood"), "wake": ("woke", "woken"),
    "wear": ("wore", "worn"), "weave": ("wove", "woven"), "weep": ("wept", "wept"),
    "win": ("won", "won"), "wind": ("wound", "wound"), "wring": ("wrung", "wrung"),
    "write": ("wrote", "written"),
}

# Verbs whose final consonant doubles before -ed/-ing.
DOUBLING = {"beg", "chop", "clap", "hop", "nod", "pat", "plan", "rob", "rub", "skip", "slap",
            "slip", "sob", "spot", "step", "stop", "tap", "trap", "trip", "drop", "grab",
            "dig", "hit", "let", "put", "quit", "run", "set", "shut", "sit", "spin", "spit",
            "split", "swim", "win", "cut", "get", "begin", "forget", "travel"}

VOWELS = set("aeiou")


def third_person(v):
    if v.endswith(("s", "x", "z", "ch", "sh")) or v in ("go",):
        return v + "es"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ies"
    return v + "s"


def past_regular(v):
    if v.endswith("e"):
        return v + "d"
    if v.endswith("y") and v[-2] not in VOWELS:
        return v[:-1] + "ied"
    if v in DOUBLING:
        return v + v[-1] + "ed"
    return v + "ed"


def gerund(v):
    if v.endswith("ie"):
        return v[:-2] + "ying"
    if v.endswith("e") and not v.endswith(("ee", "ye", "oe")) and v not in ("be",):
        return v[:-1] + "ing"
    if v in DOUBLING:
        return v + v[-1] + "ing"
    return v + "ing"


def main(out):
    forms = {}
    bases = [w.rstrip("_") for w in REGULAR.split()]
    for v in sorted(set(bases) | set(IRREGULAR)):
        if v in IRREGULAR:
            past, part = IRREGULAR[v]
        else:
            past = part = past_regular(v)
        for f in (v, third_person(v), past, part, gerund(v)):
            forms.setdefault(f, v)
    # Surfaces far more frequent as nouns/adjectives than as verbs.
    for noisy in ("lay", "rose", "wound", "ground", "lit", "light", "spring", "fly", "bear",
                  "tear", "wind", "mean", "trip", "place", "order", "point", "tap"):
        forms.pop(noisy, None)
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("# surface<TAB>lemma; generated by tools/gen_verb_lexicon.py\n")
        for surface in sorted(forms):
            fh.write(f"{surface}\t{forms[surface]}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/verbs.tsv")
