"""Permutations, insertion, bijections, class arrays and q-polynomials"""
