#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# csskit documentation build configuration file.

import os
import sys

# The project root holds the csskit package; make it importable for autodoc.
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import csskit  # noqa: E402

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'csskit'
copyright = u"2017, DSaPP Researchers"
version = csskit.__version__
release = csskit.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'csskitdoc'

latex_documents = [
    ('index', 'csskit.tex', u'csskit Documentation', u'DSaPP Researchers', 'manual'),
]

man_pages = [
    ('index', 'csskit', u'csskit Documentation', [u'DSaPP Researchers'], 1),
]
