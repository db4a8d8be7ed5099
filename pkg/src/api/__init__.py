"""Output envelopes and renderers"""
