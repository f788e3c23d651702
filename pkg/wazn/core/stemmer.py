# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
Root-and-pattern stemming with a single weighted transducer.

The stemmer is assembled from three kinds of machine:

* affix machines, which delete one listed prefix (or suffix), or nothing;
* pattern machines, which copy the root letters sitting in the slots of a
  measure and delete its fixed letters;
* the concatenation ``prefixes · patterns · suffixes``, built once for
  nouns and once for verbs and then summed.

Composing the linear machine of a word with the stemmer and reading the
output tape gives every root the word can be built from.
"""

import logging
import math
from collections import namedtuple
from pathlib import Path

import cbor2

from wazn.core import att
from wazn.core import semiring as sr
from wazn.core.alphabet import alphabet
from wazn.core.error import EmptyInventoryError, FormatError, PatternError
from wazn.core.paths import best_path, output_strings
from wazn.core.rational import compose, concat, union
from wazn.core.scorer import root_scorer, score
from wazn.core.symbols import EPSILON, symbol_table
from wazn.core.util import atomic_write, find_data_file
from wazn.core.wfst import builder, epsilon_machine, from_pairs, linear_from_string, trim


logger = logging.getLogger(__name__)

CATEGORIES = ('noun', 'verb')
AFFIX_KINDS = ('verb_prefix', 'noun_prefix', 'suffix')


#: The outcome of stemming one word. ``stemmed`` is ``False`` when no
#: measure matched and ``stem`` is the word itself.
analysis = namedtuple('analysis', ['word', 'stem', 'candidates', 'score', 'stemmed'])


class pattern(object):
    """
    A measure: fixed letters interleaved with numbered root slots.

    :param template: Sequence whose items are slot numbers (``int``, from 1)
        or fixed letters (``str``).
    :param category: ``'noun'`` or ``'verb'``.
    :raises wazn.core.error.PatternError: Slots out of order, repeated or
        missing, an arity other than 3 or 4, or an unknown category.
    """
    def __init__(self, template, category):
        self.template = tuple(template)
        self.category = category
        if category not in CATEGORIES:
            raise PatternError(f'Unknown pattern category: {category!r}')
        slots = [item for item in self.template if isinstance(item, int)]
        if slots != list(range(1, len(slots) + 1)):
            raise PatternError(f'Root slots must appear once each, in order: {self}')
        if len(slots) not in (3, 4):
            raise PatternError(f'Pattern arity must be 3 or 4, got {len(slots)}: {self}')
        self.arity = len(slots)

    @classmethod
    def parse(cls, text, category, letters=None):
        """
        Parse a template written with digits for slots, e.g. ``'م123ة'``.
        Fixed letters are normalized with ``letters`` when given.

        :type letters: wazn.core.alphabet.alphabet
        """
        template = []
        for c in text:
            if c.isdigit():
                template.append(int(c))
                continue
            if letters is not None:
                c = letters.normalize(c)
                if not c:
                    raise PatternError(f'Pattern {text!r} has a non-letter character')
            template.append(c)
        return cls(template, category)

    def instantiate(self, root):
        """
        The surface form of ``root`` under this measure.

        :rtype: str
        """
        if len(root) != self.arity:
            raise PatternError(f'Root {root!r} does not fit a {self.arity}-slot pattern')
        return ''.join(root[item - 1] if isinstance(item, int) else item
                       for item in self.template)

    def matches(self, stem):
        """
        The root read off ``stem`` if it fits this measure, otherwise ``None``.
        """
        if len(stem) != len(self.template):
            return None
        root = []
        for c, item in zip(stem, self.template):
            if isinstance(item, int):
                root.append(c)
            elif c != item:
                return None
        return ''.join(root)

    def __eq__(self, other):
        return isinstance(other, pattern) and (self.template, self.category) == (other.template, other.category)

    def __hash__(self):
        return hash((self.template, self.category))

    def __str__(self):
        return ''.join(str(item) for item in self.template)

    def __repr__(self):
        return f'pattern({self.category}, {self})'


def load_patterns(path, letters):
    """
    Read a ``category<TAB>template`` pattern file. Duplicates are dropped,
    first occurrence wins.

    :rtype: list of :py:class:`pattern`
    """
    patterns = []
    with open(path, 'r', encoding='utf-8') as fp:
        for lineno, line in enumerate(fp, 1):
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            fields = line.split('\t')
            if len(fields) != 2:
                raise FormatError(f'{path}:{lineno}: expected category<TAB>template')
            try:
                p = pattern.parse(fields[1].strip(), fields[0].strip(), letters)
            except PatternError as e:
                raise PatternError(f'{path}:{lineno}: {e}')
            if p not in patterns:
                patterns.append(p)
    return patterns


class affix_inventory(object):
    """
    Verb prefixes, noun prefixes and suffixes. Entries are normalized and
    de-duplicated (order of first appearance is kept); empty entries are
    dropped since the empty affix is always allowed.
    """
    def __init__(self, verb_prefixes=(), noun_prefixes=(), suffixes=(), letters=None):
        def clean(entries):
            seen = []
            for e in entries:
                e = letters.normalize(e) if letters is not None else e
                if e and e not in seen:
                    seen.append(e)
            return tuple(seen)

        self.verb_prefixes = clean(verb_prefixes)
        self.noun_prefixes = clean(noun_prefixes)
        self.suffixes = clean(suffixes)

    def prefixes(self, category):
        return self.noun_prefixes if category == 'noun' else self.verb_prefixes

    @classmethod
    def load(cls, path, letters):
        """
        Read a ``kind<TAB>letters`` affix file.
        """
        entries = {kind: [] for kind in AFFIX_KINDS}
        with open(path, 'r', encoding='utf-8') as fp:
            for lineno, line in enumerate(fp, 1):
                line = line.strip()
                if not line or line.startswith('#'):
                    continue
                fields = line.split('\t')
                if len(fields) != 2 or fields[0].strip() not in entries:
                    raise FormatError(f'{path}:{lineno}: expected verb_prefix|noun_prefix|suffix<TAB>letters')
                entries[fields[0].strip()].append(fields[1].strip())
        return cls(entries['verb_prefix'], entries['noun_prefix'], entries['suffix'], letters)


class stemmer_config(object):
    """
    Locations of the linguistic data a stemmer is compiled from.

    :param pattern_file: ``category<TAB>template`` lines.
    :param affix_file: ``kind<TAB>letters`` lines.
    :param normalization_file: ``from<TAB>to-or-DELETE`` lines.
    """
    def __init__(self, pattern_file, affix_file, normalization_file):
        self.pattern_file = Path(pattern_file)
        self.affix_file = Path(affix_file)
        self.normalization_file = Path(normalization_file)

    @classmethod
    def default(cls):
        """
        The bundled inventories, or same-named files in ``$WAZN_CONFIG_DIR``.
        """
        return cls(find_data_file('patterns.tsv'),
                   find_data_file('affixes.tsv'),
                   find_data_file('normalization.tsv'))

    def load(self):
        """
        Parse all three files.

        :returns: ``(alphabet, patterns, affix_inventory)``
        """
        letters = alphabet.load(self.normalization_file)
        patterns = load_patterns(self.pattern_file, letters)
        affixes = affix_inventory.load(self.affix_file, letters)
        return letters, patterns, affixes

    def __repr__(self):
        return f'stemmer_config({self.pattern_file}, {self.affix_file}, {self.normalization_file})'


def compile_pattern(p, letters, symbols=None):
    """
    Linear-shaped machine for one measure: a slot becomes a bundle of
    ``x:x`` arcs, one per canonical letter, and a fixed letter becomes a
    ``letter:<eps>`` arc.

    :type p: pattern
    :type letters: wazn.core.alphabet.alphabet
    """
    symbols = symbols or letters.symbols()
    b = builder(sr.real, symbols, symbols)
    q = b.add_state()
    b.set_initial(q)
    for item in p.template:
        r = b.add_state()
        if isinstance(item, int):
            for c in letters.letters:
                b.add_arc(q, c, c, dst=r)
        else:
            if item not in letters:
                raise PatternError(f'Fixed letter {item!r} of {p} is not canonical')
            b.add_arc(q, item, EPSILON, dst=r)
        q = r
    b.set_final(q)
    return b.build()


def compile_affixes(entries, letters=None, symbols=None):
    """
    Machine deleting any one of ``entries``, or nothing.

    :raises wazn.core.error.SymbolNotFoundError: An entry uses a letter
        outside ``letters``.
    """
    if symbols is None and letters is not None:
        symbols = letters.symbols()
    machines = [epsilon_machine(sr.real, symbols, symbols)]
    for entry in entries:
        b = builder(sr.real, symbols, symbols)
        q = b.add_state()
        b.set_initial(q)
        for c in entry:
            r = b.add_state()
            b.add_arc(q, c, EPSILON, dst=r)
            q = r
        b.set_final(q)
        machines.append(b.build())
    return _sum(machines)


def _sum(machines):
    return machines[0] if len(machines) == 1 else union(*machines)


def build_stemmer(cfg):
    """
    Compile ``(noun-prefixes · noun-patterns · suffixes) ⊕
    (verb-prefixes · verb-patterns · suffixes)``, trimmed. A category without
    patterns contributes no branch.

    :type cfg: stemmer_config
    :raises wazn.core.error.EmptyInventoryError: The pattern file lists no
        pattern.
    :returns: ``(stemmer, alphabet)``
    """
    letters, patterns, affixes = cfg.load()
    if not patterns:
        raise EmptyInventoryError(f'No patterns in {cfg.pattern_file}')
    return compile_stemmer(letters, patterns, affixes), letters


def compile_stemmer(letters, patterns, affixes):
    """
    :py:func:`build_stemmer` on inventories already in memory.
    """
    if not patterns:
        raise EmptyInventoryError('No patterns to compile')
    symbols = letters.symbols()
    suffixes = compile_affixes(affixes.suffixes, letters, symbols)
    branches = []
    for category in CATEGORIES:
        measures = [compile_pattern(p, letters, symbols) for p in patterns if p.category == category]
        if measures:
            prefixes = compile_affixes(affixes.prefixes(category), letters, symbols)
            branches.append(concat(prefixes, _sum(measures), suffixes))
    stemmer = trim(_sum(branches))
    logger.info(f'Compiled stemmer from {len(patterns)} patterns: '
                f'{stemmer.num_states} states, {stemmer.num_arcs} arcs')
    return stemmer


def candidate_stems(stemmer, word):
    """
    Output projection of ``linear_from_string(word) ∘ stemmer``: every root
    the word decomposes into, each once.

    :raises wazn.core.error.SymbolNotFoundError: ``word`` is not normalized.
    :rtype: set of str
    """
    x = linear_from_string(word, stemmer.semiring, stemmer.isymbols)
    return {''.join(s) for s in output_strings(compose(x, stemmer))}


def analyze(stemmer, sc, word):
    """
    Stem ``word`` and keep the evidence.

    :rtype: analysis
    """
    candidates = sorted(candidate_stems(stemmer, word))
    if not candidates:
        logger.debug(f'No measure matches {word!r}; left unstemmed')
        return analysis(word, word, (), 0.0, False)
    scores = {c: score(sc, c) for c in candidates}
    best = max(candidates, key=scores.__getitem__)
    return analysis(word, best, tuple(candidates), scores[best], True)


def stem(stemmer, sc, word):
    """
    The best-scoring candidate root of ``word``; ties (all-zero scores
    included) go to the lexicographically smallest candidate. A word no
    measure matches is returned unchanged.

    :rtype: str
    """
    return analyze(stemmer, sc, word).stem


def weighted_candidates(stemmer, sc, word):
    """
    Tropical acceptor with one path per candidate carrying ``-log`` of its
    score; zero-score candidates are left out. Its best path spells
    :py:func:`stem` whenever some candidate scores above zero.
    """
    pairs = []
    for c in sorted(candidate_stems(stemmer, word)):
        s = score(sc, c)
        if s > 0:
            pairs.append((c, c, -math.log(s)))
    return from_pairs(pairs, sr.tropical, stemmer.isymbols, stemmer.isymbols)


def best_stem(stemmer, sc, word):
    """
    :py:func:`stem` read off :py:func:`weighted_candidates`, or ``None``
    when no candidate scores above zero.
    """
    p = best_path(weighted_candidates(stemmer, sc, word))
    return None if p is None else ''.join(p.output)


class stemming_model(object):
    """
    A compiled stemmer bundled with its alphabet and root scorer; the unit
    persisted by ``wazn compile`` and consumed by the document pipeline.

    .. note::
        The file starts with the line ``WAZN.CORE.STEMMING_MODEL`` followed by
        a CBOR payload.
    """

    MAGIC = b'WAZN.CORE.STEMMING_MODEL\n'

    def __init__(self, stemmer, letters, scorer):
        self.stemmer = stemmer
        self.alphabet = letters
        self.scorer = scorer
        self.symbols = stemmer.isymbols

    @classmethod
    def build(cls, cfg, scorer):
        stemmer, letters = build_stemmer(cfg)
        return cls(stemmer, letters, scorer)

    def analyze(self, word):
        """
        Normalize then stem a raw word.

        :rtype: analysis
        """
        return analyze(self.stemmer, self.scorer, self.alphabet.normalize(word))

    def stem(self, word):
        return self.analyze(word).stem

    def dumps(self):
        """
        :rtype: bytes
        """
        return self.MAGIC + cbor2.dumps(self._payload())

    def save(self, filename):
        with atomic_write(filename, 'wb') as fp:
            fp.write(self.dumps())

    def _payload(self):
        return {
            'letters': ''.join(self.alphabet.letters),
            'mapping': dict(sorted(self.alphabet.mapping.items())),
            'symbols': self.symbols.dumps(),
            'stemmer': att.dumps(self.stemmer),
            'scorer': self.scorer.to_dict(),
        }

    @classmethod
    def loads(cls, data):
        """
        :raises wazn.core.error.FormatError: Missing header.
        """
        if not data.startswith(cls.MAGIC):
            raise FormatError('Not a wazn.core stemming model')
        return cls._from_payload(cbor2.loads(data[len(cls.MAGIC):]))

    @classmethod
    def load(cls, filename):
        with open(filename, 'rb') as fp:
            s = fp.readline()
            if s != cls.MAGIC:
                raise FormatError(f'{filename} is not a wazn.core stemming model')
            payload = cbor2.load(fp)
        return cls._from_payload(payload)

    @classmethod
    def _from_payload(cls, payload):
        try:
            letters = alphabet(payload['letters'], payload['mapping'])
            symbols = symbol_table.loads(payload['symbols'])
            stemmer = att.loads(payload['stemmer'], sr.real, symbols, symbols)
            scorer = root_scorer.from_dict(payload['scorer'])
        except (KeyError, TypeError) as e:
            raise FormatError(f'Corrupt stemming model: {e}')
        return cls(stemmer, letters, scorer)
