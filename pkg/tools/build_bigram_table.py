#!/usr/bin/env python3
"""Regenerate src/flatkey/data/english_bigrams.txt.

Counts letter unigrams and bigrams over a small bundle of public-domain
English texts (listed below), normalized to the 27-symbol alphabet A-Z
plus space.  The table ships with the package so the scorer needs no
corpus at runtime; rerun this script only if the source texts change.
"""

from pathlib import Path

SOURCES = {
    "Gettysburg Address (Lincoln, 1863, public domain)": """
Four score and seven years ago our fathers brought forth on this continent a new
nation conceived in liberty and dedicated to the proposition that all men are
created equal Now we are engaged in a great civil war testing whether that
nation or any nation so conceived and so dedicated can long endure We are met
on a great battle field of that war We have come to dedicate a portion of that
field as a final resting place for those who here gave their lives that that
nation might live It is altogether fitting and proper that we should do this
But in a larger sense we can not dedicate we can not consecrate we can not
hallow this ground The brave men living and dead who struggled here have
consecrated it far above our poor power to add or detract The world will little
note nor long remember what we say here but it can never forget what they did
here It is for us the living rather to be dedicated here to the unfinished work
which they who fought here have thus far so nobly advanced It is rather for us
to be here dedicated to the great task remaining before us that from these
honored dead we take increased devotion to that cause for which they gave the
last full measure of devotion that we here highly resolve that these dead shall
not have died in vain that this nation under God shall have a new birth of
freedom and that government of the people by the people for the people shall
not perish from the earth
""",
    "US Constitution preamble (1787, public domain)": """
We the People of the United States in Order to form a more perfect Union
establish Justice insure domestic Tranquility provide for the common defence
promote the general Welfare and secure the Blessings of Liberty to ourselves
and our Posterity do ordain and establish this Constitution for the United
States of America
""",
    "Declaration of Independence, opening (1776, public domain)": """
When in the Course of human events it becomes necessary for one people to
dissolve the political bands which have connected them with another and to
assume among the powers of the earth the separate and equal station to which
the Laws of Nature and of Natures God entitle them a decent respect to the
opinions of mankind requires that they should declare the causes which impel
them to the separation We hold these truths to be self evident that all men
are created equal that they are endowed by their Creator with certain
unalienable Rights that among these are Life Liberty and the pursuit of
Happiness That to secure these rights Governments are instituted among Men
deriving their just powers from the consent of the governed
""",
    "Pride and Prejudice, opening (Austen, 1813, public domain)": """
It is a truth universally acknowledged that a single man in possession of a
good fortune must be in want of a wife However little known the feelings or
views of such a man may be on his first entering a neighbourhood this truth is
so well fixed in the minds of the surrounding families that he is considered
as the rightful property of some one or other of their daughters
""",
    "A Tale of Two Cities, opening (Dickens, 1859, public domain)": """
It was the best of times it was the worst of times it was the age of wisdom it
was the age of foolishness it was the epoch of belief it was the epoch of
incredulity it was the season of Light it was the season of Darkness it was the
spring of hope it was the winter of despair we had everything before us we had
nothing before us we were all going direct to Heaven we were all going direct
the other way in short the period was so far like the present period that some
of its noisiest authorities insisted on its being received for good or for evil
in the superlative degree of comparison only
""",
    "Moby Dick, opening (Melville, 1851, public domain)": """
Call me Ishmael Some years ago never mind how long precisely having little or
no money in my purse and nothing particular to interest me on shore I thought I
would sail about a little and see the watery part of the world It is a way I
have of driving off the spleen and regulating the circulation Whenever I find
myself growing grim about the mouth whenever it is a damp drizzly November in
my soul whenever I find myself involuntarily pausing before coffin warehouses
and bringing up the rear of every funeral I meet and especially whenever my
hypos get such an upper hand of me that it requires a strong moral principle to
prevent me from deliberately stepping into the street and methodically knocking
peoples hats off then I account it high time to get to sea as soon as I can
""",
    "Alice in Wonderland, opening (Carroll, 1865, public domain)": """
Alice was beginning to get very tired of sitting by her sister on the bank and
of having nothing to do once or twice she had peeped into the book her sister
was reading but it had no pictures or conversations in it and what is the use
of a book thought Alice without pictures or conversations So she was
considering in her own mind as well as she could for the hot day made her feel
very sleepy and stupid whether the pleasure of making a daisy chain would be
worth the trouble of getting up and picking the daisies when suddenly a White
Rabbit with pink eyes ran close by her
""",
    "Hamlet, act three soliloquy (Shakespeare, 1603, public domain)": """
To be or not to be that is the question Whether tis nobler in the mind to
suffer The slings and arrows of outrageous fortune Or to take arms against a
sea of troubles And by opposing end them To die to sleep No more and by a sleep
to say we end The heartache and the thousand natural shocks That flesh is heir
to tis a consummation Devoutly to be wished To die to sleep To sleep perchance
to dream ay theres the rub For in that sleep of death what dreams may come When
we have shuffled off this mortal coil Must give us pause
""",
    "Psalm 23 (King James Version, 1611, public domain)": """
The Lord is my shepherd I shall not want He maketh me to lie down in green
pastures he leadeth me beside the still waters He restoreth my soul he leadeth
me in the paths of righteousness for his names sake Yea though I walk through
the valley of the shadow of death I will fear no evil for thou art with me thy
rod and thy staff they comfort me Thou preparest a table before me in the
presence of mine enemies thou anointest my head with oil my cup runneth over
Surely goodness and mercy shall follow me all the days of my life and I will
dwell in the house of the Lord for ever
""",
    "The Raven, opening stanzas (Poe, 1845, public domain)": """
Once upon a midnight dreary while I pondered weak and weary Over many a quaint
and curious volume of forgotten lore While I nodded nearly napping suddenly
there came a tapping As of some one gently rapping rapping at my chamber door
Tis some visitor I muttered tapping at my chamber door Only this and nothing
more Ah distinctly I remember it was in the bleak December And each separate
dying ember wrought its ghost upon the floor Eagerly I wished the morrow
vainly I had sought to borrow From my books surcease of sorrow sorrow for the
lost Lenore
""",
    "A Scandal in Bohemia, opening (Doyle, 1891, public domain)": """
To Sherlock Holmes she is always the woman I have seldom heard him mention her
under any other name In his eyes she eclipses and predominates the whole of
her sex It was not that he felt any emotion akin to love for Irene Adler All
emotions and that one particularly were abhorrent to his cold precise but
admirably balanced mind He was I take it the most perfect reasoning and
observing machine that the world has seen but as a lover he would have placed
himself in a false position He never spoke of the softer passions save with a
gibe and a sneer
""",
    "The War of the Worlds, opening (Wells, 1898, public domain)": """
No one would have believed in the last years of the nineteenth century that
this world was being watched keenly and closely by intelligences greater than
mans and yet as mortal as his own that as men busied themselves about their
various concerns they were scrutinised and studied perhaps almost as narrowly
as a man with a microscope might scrutinise the transient creatures that swarm
and multiply in a drop of water With infinite complacency men went to and fro
over this globe about their little affairs serene in their assurance of their
empire over matter
""",
    "Frankenstein, opening letter (Shelley, 1818, public domain)": """
You will rejoice to hear that no disaster has accompanied the commencement of
an enterprise which you have regarded with such evil forebodings I arrived here
yesterday and my first task is to assure my dear sister of my welfare and
increasing confidence in the success of my undertaking I am already far north
of London and as I walk in the streets of Petersburgh I feel a cold northern
breeze play upon my cheeks which braces my nerves and fills me with delight
""",
}

ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ "


def normalize(text: str) -> str:
    out = []
    for ch in text.upper():
        if ch in ALPHABET[:-1]:
            out.append(ch)
        else:
            out.append(" ")
    collapsed = " ".join("".join(out).split())
    return collapsed


def main() -> None:
    uni: dict[str, int] = {}
    bi: dict[str, int] = {}
    total_letters = 0
    for text in SOURCES.values():
        norm = normalize(text)
        total_letters += len(norm)
        for ch in norm:
            uni[ch] = uni.get(ch, 0) + 1
        for a, b in zip(norm, norm[1:]):
            bi[a + b] = bi.get(a + b, 0) + 1

    out_path = Path(__file__).resolve().parents[1] / "src" / "flatkey" / "data" / "english_bigrams.txt"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w") as fh:
        fh.write("# English letter unigram/bigram counts over the 27-symbol alphabet A-Z plus space\n")
        fh.write("# Space is written as '_' in tokens. Token of length 1 = unigram, length 2 = bigram.\n")
        fh.write("# Sources (all public domain):\n")
        for name in SOURCES:
            fh.write(f"#   - {name}\n")
        fh.write(f"# Total normalized symbols: {total_letters}\n")
        for sym in ALPHABET:
            tok = sym.replace(" ", "_")
            fh.write(f"{tok} {uni.get(sym, 0)}\n")
        for a in ALPHABET:
            for b in ALPHABET:
                count = bi.get(a + b, 0)
                if count:
                    tok = (a + b).replace(" ", "_")
                    fh.write(f"{tok} {count}\n")
    print(f"wrote {out_path} ({total_letters} symbols)")


if __name__ == "__main__":
    main()
