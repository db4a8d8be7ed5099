"""Published values and golden tables"""
