"""Enumeration and verification services"""
