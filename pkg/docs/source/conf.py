# -*- coding: utf-8 -*-
#
# ionsqueeze documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.
#
# All configuration values have a default; values that are commented out
# serve to show the default.

import os
import sys
sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

from ionsqueeze import __version__, VERSION


# -- General configuration ------------------------------------------------

# Add any Sphinx extension module names here, as strings. They can be
# extensions coming with Sphinx (named 'sphinx.ext.*') or your custom
# ones.
extensions = ['sphinx.ext.mathjax', 'sphinxcontrib.spelling']

# Add any paths that contain templates here, relative to this directory.
templates_path = ['_templates']

source_suffix = '.rst'

# The master toctree document.
master_doc = 'index'

# General information about the project.
project = u'ionsqueeze'
copyright = u'2026, the ionsqueeze developers'
author = u'the ionsqueeze developers'

# The short X.Y version.
version = '{}.{}'.format(VERSION[0], VERSION[1])
# The full version, including alpha/beta/rc tags.
release = __version__

language = 'en_GB'

# List of patterns, relative to source directory, that match files and
# directories to ignore when looking for source files.
exclude_patterns = []

# The name of the Pygments (syntax highlighting) style to use.
pygments_style = 'sphinx'

# If true, `todo` and `todoList` produce output, else they produce nothing.
todo_include_todos = False

# sphinxcontrib.spelling settings

spelling_lang = 'en_GB'

spelling_word_list_filename = 'spelling_wordlist.txt'

spelling_show_suggestions = True


# -- Options for HTML output ----------------------------------------------

html_theme = 'default'

html_static_path = []


# -- Options for HTMLHelp output ------------------------------------------

# Output file base name for HTML help builder.
htmlhelp_basename = 'ionsqueezedoc'


# -- Options for LaTeX output ---------------------------------------------

latex_elements = {}

# Grouping the document tree into LaTeX files. List of tuples
# (source start file, target name, title,
#  author, documentclass [howto, manual, or own class]).
latex_documents = [
    (master_doc, 'ionsqueeze.tex', u'ionsqueeze Documentation',
     author, 'manual'),
]


# -- Options for manual page output ---------------------------------------

# One entry per manual page. List of tuples
# (source start file, name, description, authors, manual section).
man_pages = [
    (master_doc, 'ionsqueeze', u'ionsqueeze Documentation',
     [author], 1)
]


# -- Options for Texinfo output -------------------------------------------

texinfo_documents = [(
    master_doc,
    'ionsqueeze',
    u'ionsqueeze Documentation',
    author,
    'ionsqueeze',
    ("Simulate the preparation of two-mode squeezed motional states of two "
     "trapped ions"),
    'Miscellaneous'
)]
