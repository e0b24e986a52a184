# Services module
# Mantener vacío para evitar dependencias circulares