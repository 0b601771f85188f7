# -*- coding: utf-8 -*-
#
# leggett documentation build configuration file.

import sys
import os

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))


# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
    'sphinx.ext.todo',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'leggett'
copyright = u'2026, the leggett developers'
author = u'the leggett developers'

version = '0.1'
release = '0.1.0b'

language = None
exclude_patterns = ['_build']
pygments_style = 'sphinx'
todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_static_path = ['_static']
htmlhelp_basename = 'leggettdoc'


# -- Options for LaTeX / manual / Texinfo output --------------------------

latex_elements = {
}

latex_documents = [
  (master_doc, 'leggett.tex', u'leggett Documentation',
   author, 'manual'),
]

man_pages = [
    (master_doc, 'leggett', u'leggett Documentation',
     [author], 1)
]

texinfo_documents = [
  (master_doc, 'leggett', u'leggett Documentation',
   author, 'leggett', 'Hidden-variable audits for Leggett-type inequalities.',
   'Miscellaneous'),
]


intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}

autodoc_member_order = 'bysource'
autodoc_default_options = {'undoc-members': True}
