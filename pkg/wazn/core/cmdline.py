# -*- coding: utf-8 -*-
# Copyright (c) 2024 wazn.core contributors
# See LICENSE.rst for details.

"""
The ``wazn`` command: one subcommand per pipeline step, each a thin wrapper
over :py:mod:`wazn.core.pipeline`.

Exit codes: ``0`` success, ``1`` usage error, ``2`` data error.
"""

import sys
import logging
import argparse
from pathlib import Path

import wazn.core
from wazn.core import pipeline
from wazn.core.alphabet import alphabet, from_buckwalter, to_buckwalter
from wazn.core.archive import fst_archive
from wazn.core.error import Error
from wazn.core.kernel import gram_matrix
from wazn.core.metrics import format_report
from wazn.core.stemmer import stemmer_config
from wazn.core.svm import ovr_model, read_predictions, write_predictions
from wazn.core.synthetic import generate_corpus
from wazn.core.util import atomic_write


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def load_config(path):
    """
    Load settings from file path and return list with parsed lines, one
    ``--flag=value`` per line.

    :param path: Location of configuration file.
    :type path: str
    :rtype: list
    """
    args = []
    with open(path, 'r', encoding='utf-8') as fp:
        for line in fp.readlines():
            if line.strip() and not line.startswith("#"):
                args.append(line.strip())

    return args


class _parser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f'{self.prog}: error: {message}\n')


def _stemmer_options(parser):
    group = parser.add_argument_group('Stemmer')
    group.add_argument('--patterns', type=str, default=None, help='Pattern inventory (category<TAB>template lines)')
    group.add_argument('--affixes', type=str, default=None, help='Affix inventory (kind<TAB>letters lines)')
    group.add_argument('--normalization', type=str, default=None, help='Normalization table (from<TAB>to lines)')
    group.add_argument('--roots', type=str, default=None, help='Root list the scorer is trained on')
    group.add_argument('--smoothing', action='store_true', help='Add-one smoothing of the root scorer')


def _encoding_options(parser):
    group = parser.add_argument_group('Encoding')
    group.add_argument('--stopwords', type=str, default=None, help='Stopword list')
    group.add_argument('--no-boundary', dest='boundary', action='store_false', help='Concatenate stems without the word boundary symbol')
    group.add_argument('--no-stemming', dest='stemming', action='store_false', help='Encode normalized tokens instead of stems')


def _kernel_options(parser):
    group = parser.add_argument_group('Kernel')
    group.add_argument('--order', type=int, default=3, help='n-gram order')
    group.add_argument('--sigma', type=int, default=29, help='Alphabet size')
    group.add_argument('--normalize', action=argparse.BooleanOptionalAction, default=True, help='Cosine-normalize the kernel')


def _svm_options(parser):
    group = parser.add_argument_group('SVM')
    group.add_argument('-C', dest='C', type=float, default=1.0, help='Box constraint')
    group.add_argument('--tol', type=float, default=1e-3, help='SMO stopping tolerance')


def create_parser(description='Arabic text classification with rational kernels'):
    """
    Create and return command-line argument parser.
    """
    parser = _parser(prog='wazn', description=description,
                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    general_group = parser.add_argument_group('General')
    general_group.add_argument('--config', '-f', type=str, help='Load subcommand settings from a file')
    general_group.add_argument('--verbose', '-v', action='store_true', help='Log progress at debug level')
    general_group.add_argument('--version', action='version', version=f'%(prog)s {wazn.core.__version__}')

    commands = parser.add_subparsers(dest='command', metavar='COMMAND')

    def command(name, help):
        return commands.add_parser(name, help=help, description=help,
                                   formatter_class=argparse.ArgumentDefaultsHelpFormatter)

    p = command('stem', 'Print the best stem of each word')
    p.add_argument('words', nargs='*', help='Words to stem')
    p.add_argument('--input', '-i', type=str, default=None, help='Read whitespace-separated words from a file')
    p.add_argument('--model', '-m', type=str, default=None, help='Compiled stemming model; compiled from the stemmer options when omitted')
    p.add_argument('--buckwalter', '-b', action='store_true', help='Read and write Buckwalter transliteration')
    _stemmer_options(p)

    p = command('compile', 'Compile the stemmer and its scorer into a model file')
    p.add_argument('output', help='Model file to write')
    _stemmer_options(p)

    p = command('far', 'Encode a corpus manifest into an FST archive')
    p.add_argument('manifest', help='path<TAB>label lines')
    p.add_argument('output', help='Archive file to write')
    p.add_argument('--model', '-m', type=str, default=None, help='Compiled stemming model')
    _encoding_options(p)

    p = command('kernel', 'Compute the n-gram kernel of an archive')
    p.add_argument('archive', help='FST archive')
    p.add_argument('output', help='Kernel archive to write')
    p.add_argument('--model', '-m', type=str, default=None, help='Stemming model whose symbol table the archive uses')
    _kernel_options(p)

    p = command('split', 'Split a corpus into training and test documents')
    p.add_argument('manifest', help='path<TAB>label lines')
    p.add_argument('output', help='Split file to write')
    p.add_argument('--ratio', type=float, default=0.8, help='Share of training documents')
    p.add_argument('--seed', type=int, default=0, help='Random seed')

    p = command('train', 'Train one-vs-rest SVMs on a precomputed kernel')
    p.add_argument('kernel', help='Kernel archive')
    p.add_argument('split', help='Split file')
    p.add_argument('output', help='Model file to write')
    _svm_options(p)

    p = command('predict', 'Classify the test documents of a split')
    p.add_argument('kernel', help='Kernel archive')
    p.add_argument('split', help='Split file')
    p.add_argument('model', help='Trained SVM model')
    p.add_argument('output', help='Predictions file to write')

    p = command('eval', 'Score predictions per class')
    p.add_argument('predictions', help='Predictions file')
    p.add_argument('split', help='Split file holding the reference labels')
    p.add_argument('--output', '-o', type=str, default=None, help='Also write the table to a file')

    p = command('demo', 'Generate a synthetic corpus and run the whole pipeline on it')
    p.add_argument('directory', help='Working directory')
    p.add_argument('--classes', type=int, default=6, help='Number of classes')
    p.add_argument('--docs-per-class', type=int, default=40, help='Documents per class')
    p.add_argument('--words-per-doc', type=int, default=20, help='Words per document')
    p.add_argument('--seed', type=int, default=0, help='Random seed of the corpus and the split')
    p.add_argument('--ratio', type=float, default=0.8, help='Share of training documents')
    _kernel_options(p)
    _svm_options(p)

    return parser


def _stemmer_config(args):
    default = stemmer_config.default()
    return stemmer_config(args.patterns or default.pattern_file,
                          args.affixes or default.affix_file,
                          args.normalization or default.normalization_file)


def _model(args):
    if getattr(args, 'model', None):
        return pipeline.load_model(args.model)
    if hasattr(args, 'roots'):
        return pipeline.compile_model(_stemmer_config(args), args.roots, args.smoothing)
    return pipeline.compile_model()


def cmd_stem(args, out):
    words = list(args.words)
    if args.input:
        with open(args.input, 'r', encoding='utf-8') as fp:
            words.extend(fp.read().split())
    if args.buckwalter:
        words = [from_buckwalter(w) for w in words]
    model = _model(args)
    for a in pipeline.stem_words(model, words):
        line = pipeline.format_analysis(a)
        out.write((to_buckwalter(line) if args.buckwalter else line) + '\n')


def cmd_compile(args, out):
    model = _model(args)
    model.save(args.output)
    logger.info(f'Wrote stemming model to {args.output}')


def cmd_far(args, out):
    archive = pipeline.build_archive(args.manifest, _model(args), args.stopwords,
                                     args.boundary, args.stemming)
    archive.write(args.output)


def cmd_kernel(args, out):
    if args.order < 1:
        raise ValueError(f'n-gram order must be at least 1, got {args.order}')
    symbols = pipeline.load_model(args.model).symbols if args.model else alphabet.default().symbols()
    archive = fst_archive.read(args.archive, symbols=symbols)
    kernel = pipeline.build_kernel(archive, args.order, args.sigma, args.normalize, symbols)
    kernel.write(args.output)


def cmd_split(args, out):
    pipeline.make_split(args.manifest, args.output, args.ratio, args.seed)


def cmd_train(args, out):
    model = pipeline.train(gram_matrix.read(args.kernel), args.split, args.C, args.tol)
    model.write(args.output)


def cmd_predict(args, out):
    model = ovr_model.read(args.model)
    predictions = pipeline.predict_split(gram_matrix.read(args.kernel), args.split, model)
    write_predictions(args.output, predictions)


def cmd_eval(args, out):
    report = pipeline.evaluate_predictions(read_predictions(args.predictions), args.split)
    table = format_report(report)
    out.write(table)
    if args.output:
        with atomic_write(args.output) as fp:
            fp.write(table)


def cmd_demo(args, out):
    directory = Path(args.directory)
    manifest = generate_corpus(directory / 'corpus', classes=args.classes,
                               docs_per_class=args.docs_per_class,
                               words_per_doc=args.words_per_doc, seed=args.seed)
    config = pipeline.pipeline_config(manifest, directory / 'output',
                                      roots=manifest.parent / 'roots.txt',
                                      order=args.order, sigma=args.sigma, normalize=args.normalize,
                                      C=args.C, tol=args.tol, seed=args.seed, ratio=args.ratio)
    out.write(format_report(pipeline.run(config)))


COMMANDS = {
    'stem': cmd_stem,
    'compile': cmd_compile,
    'far': cmd_far,
    'kernel': cmd_kernel,
    'split': cmd_split,
    'train': cmd_train,
    'predict': cmd_predict,
    'eval': cmd_eval,
    'demo': cmd_demo,
}


def parse_args(argv, parser=None):
    """
    Parse ``argv``; settings from a ``--config`` file are inserted right
    after the subcommand name, so flags given on the command line win.

    :raises SystemExit: Usage error.
    """
    parser = parser or create_parser()
    args = parser.parse_args(argv)
    if args.config:
        config = load_config(args.config)
        position = argv.index(args.command) + 1 if args.command in argv else len(argv)
        args = parser.parse_args(argv[:position] + config + argv[position:])
    return args


def main(argv=None, out=None):
    """
    Run the ``wazn`` command and return its exit code.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    out = out or sys.stdout
    parser = create_parser()
    try:
        args = parse_args(argv, parser)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except OSError as e:
        sys.stderr.write(f'wazn: {e}\n')
        return EXIT_USAGE

    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format='%(asctime)s %(name)s %(levelname)s %(message)s')
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    try:
        COMMANDS[args.command](args, out)
    except (Error, OSError, ValueError) as e:
        sys.stderr.write(f'wazn {args.command}: {e}\n')
        return EXIT_DATA
    return EXIT_OK


if __name__ == '__main__':  # pragma: no cover
    sys.exit(main())
