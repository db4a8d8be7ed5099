"""Major index congruence toolkit"""
