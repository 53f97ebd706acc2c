#!/usr/bin/env python
import argparse
import os
import sys
import unittest
import warnings


def make_parser():
    parser = argparse.ArgumentParser()
    parser.add_argument(
        '--deprecation',
        choices=['all', 'pending', 'imminent', 'none'],
        default='imminent'
    )
    parser.add_argument(
        '--slow',
        action='store_true',
        default=False,
        help='Also run the acceptance-scale tests (large cutoffs, RWA sweeps)'
    )
    parser.add_argument(
        '--numpy-warnings',
        choices=['raise', 'warn', 'ignore'],
        default='warn',
        help='How numpy floating-point problems are reported'
    )
    parser.add_argument(
        '-v', '--verbosity',
        type=int,
        choices=[0, 1, 2],
        default=1
    )
    parser.add_argument('labels', nargs='*')
    return parser


def parse_args(args=None):
    return make_parser().parse_args(args)


def runtests():
    parsed_args = parse_args()

    only_ionsqueeze = r'^ionsqueeze(\.|$)'
    if parsed_args.deprecation == 'all':
        # Show all deprecation warnings from all packages
        warnings.simplefilter('default', category=DeprecationWarning)
        warnings.simplefilter('default', category=PendingDeprecationWarning)
    elif parsed_args.deprecation == 'pending':
        # Show all deprecation warnings
        warnings.filterwarnings('default', category=DeprecationWarning, module=only_ionsqueeze)
        warnings.filterwarnings('default', category=PendingDeprecationWarning, module=only_ionsqueeze)
    elif parsed_args.deprecation == 'imminent':
        # Show only imminent deprecation warnings
        warnings.filterwarnings('default', category=DeprecationWarning, module=only_ionsqueeze)
    elif parsed_args.deprecation == 'none':
        # Deprecation warnings are ignored
        pass

    if parsed_args.slow:
        os.environ['IONSQUEEZE_RUN_SLOW_TESTS'] = '1'

    import numpy as np
    np.seterr(all=parsed_args.numpy_warnings)

    loader = unittest.TestLoader()
    if parsed_args.labels:
        suite = loader.loadTestsFromNames(parsed_args.labels)
    else:
        top_level = os.path.dirname(os.path.abspath(__file__))
        suite = loader.discover('ionsqueeze', top_level_dir=top_level)
    result = unittest.TextTestRunner(verbosity=parsed_args.verbosity).run(suite)
    return 0 if result.wasSuccessful() else 1

if __name__ == '__main__':
    sys.exit(runtests())
