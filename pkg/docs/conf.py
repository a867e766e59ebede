# -*- coding: utf-8 -*-
#
# python-cyclehom documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

import pkg_resources


sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.todo',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'python-cyclehom'
copyright = u'2019, python-cyclehom contributors'

version = pkg_resources.get_distribution("python-cyclehom").version
release = version

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
if os.environ.get('READTHEDOCS') == 'True':
    html_theme = 'default'

html_static_path = ['_static']
htmlhelp_basename = 'python-cyclehomdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_elements = {
}

latex_documents = [
  ('index', 'python-cyclehom.tex', u'python-cyclehom Documentation',
   u'python-cyclehom contributors', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    ('index', 'python-cyclehom', u'python-cyclehom Documentation',
     [u'python-cyclehom contributors'], 1)
]
