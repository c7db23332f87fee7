# Classified sets toolkit
