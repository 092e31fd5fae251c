"""Readers and writers for dependency-annotated, word-aligned bitext.

Sentence annotation arrives as CoNLL-U (ten tab-separated columns, blank
line between sentences), token alignment as Pharaoh lines of 0-based
``i-j`` pairs, one line per sentence pair. Internally every token index
is 1-based, matching CoNLL-U ids; alignment indices are converted on
read and back on write.

Both parsers run in lenient or strict mode. Strict raises FormatError at
the first defect. Lenient records one Diagnostic per defect and keeps a
placeholder (None) at the position of an unparseable sentence so the
positional correspondence between the three input files survives;
assemble_bitext later drops pairs touching a placeholder without
emitting further diagnostics for them.
"""

import re
from dataclasses import dataclass
from pathlib import Path

from svcminer.errors import Diagnostic, FormatError

CONLLU_COLUMNS = 10

_MWT_ID = re.compile(r"\d+-\d+")
_EMPTY_NODE_ID = re.compile(r"\d+\.\d+")
_ALIGN_PAIR = re.compile(r"(\d+)-(\d+)")


@dataclass(frozen=True, slots=True)
class Token:
    index: int  # 1-based position within the sentence
    surface: str
    lemma: str
    upos: str
    xpos: str | None
    head: int  # 0 = root, otherwise a 1-based token index
    deprel: str


@dataclass(slots=True)
class Sentence:
    language: str
    sentence_id: str
    tokens: list[Token]

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True, slots=True)
class AlignmentLink:
    src_index: int  # 1-based token index in the L1 sentence
    tgt_index: int  # 1-based token index in the L2 sentence


@dataclass(slots=True)
class SentencePair:
    pair_id: str
    l1_sentence: Sentence
    l2_sentence: Sentence
    links: set[AlignmentLink]


@dataclass(slots=True)
class BitextCorpus:
    l1: str
    l2: str
    pairs: list[SentencePair]


def _parse_block(token_lines, sent_id, language, source):
    """Turn one CoNLL-U block into a Sentence, or raise FormatError."""
    tokens = []
    for line_no, cols in token_lines:
        if len(cols) != CONLLU_COLUMNS:
            raise FormatError(
                f"expected {CONLLU_COLUMNS} columns, found {len(cols)}",
                line_no, source)
        tid = cols[0]
        if _MWT_ID.fullmatch(tid) or _EMPTY_NODE_ID.fullmatch(tid):
            continue  # ranges and empty nodes carry no dependency structure
        if not tid.isdigit():
            raise FormatError(f"non-numeric token id {tid!r}", line_no, source)
        index = int(tid)
        if index != len(tokens) + 1:
            raise FormatError(
                f"token ids not contiguous: expected {len(tokens) + 1}, found {index}",
                line_no, source)
        try:
            head = int(cols[6])
        except ValueError:
            raise FormatError(
                f"non-numeric head {cols[6]!r}", line_no, source) from None
        if head < 0:
            raise FormatError(f"negative head {head}", line_no, source)
        surface = cols[1]
        lemma = cols[2] if cols[2] not in ("", "_") else surface
        xpos = cols[4] if cols[4] != "_" else None
        deprel = cols[7] if cols[7] else "_"
        tokens.append((line_no, Token(index, surface, lemma, cols[3], xpos,
                                      head, deprel)))
    n = len(tokens)
    for line_no, tok in tokens:
        if tok.head > n:
            raise FormatError(
                f"head {tok.head} outside sentence of {n} tokens",
                line_no, source)
        if tok.head == tok.index:
            raise FormatError(f"token {tok.index} heads itself", line_no, source)
    return Sentence(language, sent_id, [tok for _, tok in tokens])


def parse_conllu(lines, language, *, strict=False, diagnostics=None,
                 source="conllu"):
    """Parse CoNLL-U lines into sentences.

    Returns one entry per sentence block. In lenient mode an unparseable
    block yields None (after recording a Diagnostic) so that positions
    stay aligned with the parallel files; comment-only blocks are ignored.
    """
    if diagnostics is None:
        diagnostics = []
    sentences: list[Sentence | None] = []
    token_lines: list[tuple[int, list[str]]] = []
    sent_id = None
    counter = 0

    def flush():
        nonlocal token_lines, sent_id, counter
        if not token_lines:
            sent_id = None
            return
        counter += 1
        sid = sent_id if sent_id is not None else str(counter)
        try:
            sentences.append(_parse_block(token_lines, sid, language, source))
        except FormatError as exc:
            if strict:
                raise
            diagnostics.append(Diagnostic(exc.source, exc.line_no, exc.message))
            sentences.append(None)
        token_lines = []
        sent_id = None

    for line_no, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if line == "":
            flush()
        elif line.startswith("#"):
            key, sep, value = line[1:].partition("=")
            if sep and key.strip() == "sent_id":
                sent_id = value.strip()
        else:
            token_lines.append((line_no, line.split("\t")))
    flush()
    return sentences


def parse_alignments(lines, *, strict=False, diagnostics=None,
                     source="alignments"):
    """Parse Pharaoh alignment lines into per-pair link sets (1-based).

    Every input line yields exactly one set, malformed pair tokens are
    dropped individually in lenient mode, so positions always match the
    sentence files.
    """
    if diagnostics is None:
        diagnostics = []
    link_sets = []
    for line_no, raw in enumerate(lines, 1):
        links = set()
        for tok in raw.split():
            match = _ALIGN_PAIR.fullmatch(tok)
            if match is None:
                if strict:
                    raise FormatError(f"malformed alignment pair {tok!r}",
                                      line_no, source)
                diagnostics.append(Diagnostic(
                    source, line_no, f"malformed alignment pair {tok!r}"))
                continue
            links.add(AlignmentLink(int(match.group(1)) + 1,
                                    int(match.group(2)) + 1))
        link_sets.append(links)
    return link_sets


def assemble_bitext(l1_sents, l2_sents, link_sets, l1=None, l2=None, *,
                    strict=False, diagnostics=None, align_source="alignments"):
    """Join parallel sentence lists and link sets into a corpus.

    The three lists must be positionally aligned and equally long (hard
    error otherwise). Out-of-range links are dropped with a diagnostic in
    lenient mode; positions where either sentence is a placeholder are
    skipped silently, their defects were reported during parsing.
    """
    if diagnostics is None:
        diagnostics = []
    if not (len(l1_sents) == len(l2_sents) == len(link_sets)):
        raise ValueError(
            "parallel streams differ in length: "
            f"{len(l1_sents)} L1 sentences, {len(l2_sents)} L2 sentences, "
            f"{len(link_sets)} alignment lines")
    pairs = []
    for pos, (s1, s2, links) in enumerate(zip(l1_sents, l2_sents, link_sets), 1):
        if s1 is None or s2 is None:
            continue
        if l1 is None:
            l1, l2 = s1.language, s2.language
        if s1.language != l1 or s2.language != l2:
            raise ValueError(
                f"sentence pair {pos} carries languages "
                f"{s1.language}/{s2.language}, expected {l1}/{l2}")
        kept = set()
        for link in links:
            if (1 <= link.src_index <= len(s1.tokens)
                    and 1 <= link.tgt_index <= len(s2.tokens)):
                kept.add(link)
            else:
                msg = (f"alignment link {link.src_index - 1}-{link.tgt_index - 1} "
                       f"out of range for sentence pair {pos}")
                if strict:
                    raise FormatError(msg, pos, align_source)
                diagnostics.append(Diagnostic(align_source, pos, msg))
        pairs.append(SentencePair(f"{s1.sentence_id}|{s2.sentence_id}", s1, s2,
                                  kept))
    if l1 is None or l2 is None:
        raise ValueError("cannot determine language codes from empty input")
    if l1 == l2:
        raise ValueError(f"both sides carry the same language code {l1!r}")
    return BitextCorpus(l1, l2, pairs)


def write_conllu(sentences):
    """Serialize sentences back to CoNLL-U text."""
    lines = []
    for sent in sentences:
        lines.append(f"# sent_id = {sent.sentence_id}")
        for tok in sent.tokens:
            lines.append("\t".join((
                str(tok.index), tok.surface, tok.lemma, tok.upos,
                tok.xpos if tok.xpos is not None else "_", "_",
                str(tok.head), tok.deprel, "_", "_")))
        lines.append("")
    return "\n".join(lines) + "\n" if lines else ""


def write_pharaoh(link_sets):
    """Serialize link sets back to Pharaoh text (0-based indices)."""
    lines = []
    for links in link_sets:
        ordered = sorted(links, key=lambda l: (l.src_index, l.tgt_index))
        lines.append(" ".join(f"{l.src_index - 1}-{l.tgt_index - 1}"
                              for l in ordered))
    return "\n".join(lines) + "\n" if lines else ""


def corpus_to_texts(corpus):
    """Serialize a corpus to (L1 CoNLL-U, L2 CoNLL-U, Pharaoh) texts."""
    return (write_conllu(p.l1_sentence for p in corpus.pairs),
            write_conllu(p.l2_sentence for p in corpus.pairs),
            write_pharaoh(p.links for p in corpus.pairs))


def load_bitext(conllu1_path, conllu2_path, align_path, l1, l2, *,
                strict=False, diagnostics=None):
    """Read and assemble the three input files into a BitextCorpus."""
    if diagnostics is None:
        diagnostics = []
    text1 = Path(conllu1_path).read_text(encoding="utf-8")
    text2 = Path(conllu2_path).read_text(encoding="utf-8")
    align_text = Path(align_path).read_text(encoding="utf-8")
    s1 = parse_conllu(text1.splitlines(), l1, strict=strict,
                      diagnostics=diagnostics, source=str(conllu1_path))
    s2 = parse_conllu(text2.splitlines(), l2, strict=strict,
                      diagnostics=diagnostics, source=str(conllu2_path))
    link_sets = parse_alignments(align_text.splitlines(), strict=strict,
                                 diagnostics=diagnostics,
                                 source=str(align_path))
    return assemble_bitext(s1, s2, link_sets, l1, l2, strict=strict,
                           diagnostics=diagnostics,
                           align_source=str(align_path))
