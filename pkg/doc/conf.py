# -*- coding: utf-8 -*-
#
# arbocert documentation build configuration file, created by
# sphinx-quickstart.

import os

# -- General configuration ------------------------------------------------

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.doctest',
              'sphinx.ext.intersphinx',
              'sphinx.ext.mathjax',
              'sphinx.ext.viewcode',
              'sphinx.ext.napoleon',
              ]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'arbocert'
copyright = u'2026, arbocert developers'
author = u'arbocert developers'

version_file = os.path.join(
    '..', 'arbocert', 'VERSION.txt')
with open(version_file) as fh:
    version = fh.read().strip()
release = version

language = None
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'
todo_include_todos = False

autosummary_generate = True
autodoc_default_flags = ['members', 'inherited-members']

# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'
html_theme_options = {
    'show_powered_by': 'false',
    'logo_name': 'true',
    'fixed_sidebar': 'true',
}
html_title = "&mdash; arbocert"
htmlhelp_basename = 'arbocertdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (master_doc, 'arbocert.tex', u'arbocert Documentation',
     u'arbocert developers', 'manual'),
]

man_pages = [
    (master_doc, 'arbocert', u'arbocert Documentation',
     [author], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3/', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'sympy': ('https://docs.sympy.org/latest/', None),
    'sklearn': ('https://scikit-learn.org/stable', None),
    'pandas': ('https://pandas.pydata.org/pandas-docs/stable/', None),
}

napoleon_use_param = True
autodoc_typehints = "none"
