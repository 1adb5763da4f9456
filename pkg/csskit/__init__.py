# -*- coding: utf-8 -*-

__author__ = """DSaPP Researchers"""
__email__ = 'datascifellows@gmail.com'
__version__ = '0.1.0'
